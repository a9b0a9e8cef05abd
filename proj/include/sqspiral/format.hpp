#pragma once

#include <cstdio>
#include <string>

namespace sqspiral {

// printf-style fixed notation; a value that rounds to zero prints unsigned.
inline std::string format_fixed(double v, int places)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    std::string s = buf;
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, 1);
    return s;
}

} // namespace sqspiral
