#pragma once

#include <sqspiral/area_fib.hpp>
#include <sqspiral/arm_tracer.hpp>
#include <sqspiral/compensated.hpp>
#include <sqspiral/errors.hpp>
#include <sqspiral/format.hpp>
#include <sqspiral/number_group.hpp>
#include <sqspiral/primality.hpp>
#include <sqspiral/prime_scan.hpp>
#include <sqspiral/quad_poly.hpp>
#include <sqspiral/rational.hpp>
#include <sqspiral/render.hpp>
#include <sqspiral/spiral_core.hpp>
#include <sqspiral/table_cache.hpp>
