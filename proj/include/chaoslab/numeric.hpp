#pragma once

#include <cmath>
#include <cstdint>

namespace chaoslab {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Fixed-point accumulator with resolution 2^-52 and 128-bit range.
///
/// Addition is exact, hence associative and commutative: partial sums can be
/// formed in any order or on any number of workers and still combine to the
/// same bits. Magnitudes must stay below 2^74 per term and in total.
class ExactSum {
public:
    void add(double x) noexcept
    {
        if (x != 0.0)
            acc_ += static_cast<__int128>(std::ldexp(x, kScaleBits));
    }

    ExactSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    ExactSum& operator+=(const ExactSum& other) noexcept
    {
        acc_ += other.acc_;
        return *this;
    }

    double value() const noexcept { return std::ldexp(static_cast<double>(acc_), -kScaleBits); }

    friend bool operator==(const ExactSum&, const ExactSum&) = default;

private:
    static constexpr int kScaleBits = 52;
    __int128 acc_ = 0;
};

} // namespace chaoslab
