#pragma once

#include <cmath>

namespace sqspiral {

// Neumaier's variant of Kahan summation. The running error term also catches
// the case where the addend is larger than the partial sum.
template <typename Real>
class compensated_sum {
public:
    compensated_sum() = default;
    explicit compensated_sum(Real start) : sum_(start) {}

    void add(Real x) noexcept
    {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            err_ += (sum_ - t) + x;
        else
            err_ += (x - t) + sum_;
        sum_ = t;
    }

    compensated_sum& operator+=(Real x) noexcept
    {
        add(x);
        return *this;
    }

    Real value() const noexcept { return sum_ + err_; }

private:
    Real sum_{};
    Real err_{};
};

} // namespace sqspiral
