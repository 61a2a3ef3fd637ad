#pragma once

#include <span>
#include <vector>

namespace curvekit {

/// Truncated power series f(u0 + u) = sum_k c_k u^k, k = 0..order.
///
/// Binary operations truncate to the smaller order of the two operands, so a
/// result is never claimed to be more accurate than its inputs.
class Taylor {
public:
    Taylor() = default;
    explicit Taylor(int order, double c0 = 0.0);
    explicit Taylor(std::vector<double> coefficients);

    static Taylor constant(double value, int order) { return Taylor(order, value); }
    /// The identity series u0 + u.
    static Taylor variable(double value, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool empty() const { return c_.empty(); }
    double value() const { return c_.front(); }
    double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
    std::span<const double> coefficients() const { return c_; }

    /// k-th derivative at the expansion point, k! c_k.
    double derivative(int k) const;
    Taylor differentiated() const;
    Taylor integrated(double c0 = 0.0) const;
    Taylor truncated(int order) const;
    double evaluate(double u) const;

    /// this(inner(u)); inner must have a zero constant term.
    Taylor compose(const Taylor& inner) const;
    /// Series inverse g with this(g(u)) = u; needs c_0 = 0 and c_1 != 0.
    Taylor reversion() const;

    Taylor& operator+=(const Taylor& o);
    Taylor& operator-=(const Taylor& o);
    Taylor& operator*=(const Taylor& o);
    Taylor& operator/=(const Taylor& o);
    Taylor& operator+=(double a) { c_[0] += a; return *this; }
    Taylor& operator-=(double a) { c_[0] -= a; return *this; }
    Taylor& operator*=(double a);
    Taylor& operator/=(double a);

private:
    std::vector<double> c_;
};

Taylor operator-(const Taylor& a);
Taylor operator+(Taylor a, const Taylor& b);
Taylor operator-(Taylor a, const Taylor& b);
Taylor operator*(const Taylor& a, const Taylor& b);
Taylor operator/(const Taylor& a, const Taylor& b);
Taylor operator+(Taylor a, double b);
Taylor operator+(double a, Taylor b);
Taylor operator-(Taylor a, double b);
Taylor operator-(double a, const Taylor& b);
Taylor operator*(Taylor a, double b);
Taylor operator*(double a, Taylor b);
Taylor operator/(Taylor a, double b);
Taylor operator/(double a, const Taylor& b);

Taylor sqrt(const Taylor& a);
Taylor exp(const Taylor& a);
Taylor log(const Taylor& a);
Taylor sin(const Taylor& a);
Taylor cos(const Taylor& a);
Taylor tan(const Taylor& a);
Taylor sinh(const Taylor& a);
Taylor cosh(const Taylor& a);
Taylor tanh(const Taylor& a);
Taylor abs(const Taylor& a);
Taylor pow(const Taylor& a, int n);
Taylor pow(const Taylor& a, double p);

/// Vector-valued series, one Taylor per ambient coordinate.
using TaylorVec = std::vector<Taylor>;

int min_order(std::span<const Taylor> v);
Taylor dot(std::span<const Taylor> a, std::span<const Taylor> b);
TaylorVec differentiated(std::span<const Taylor> v);

}  // namespace curvekit
