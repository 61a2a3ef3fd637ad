#include "curvekit/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvekit {

namespace {

int common_order(const Taylor& a, const Taylor& b) { return std::min(a.order(), b.order()); }

// sin and cos share one recurrence: s' = c a', c' = -s a'.
void sin_cos(const Taylor& a, Taylor& s, Taylor& c) {
    const int n = a.order();
    s = Taylor(n, std::sin(a[0]));
    c = Taylor(n, std::cos(a[0]));
    for (int k = 1; k <= n; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * a[j] * c[k - j];
            cc += j * a[j] * s[k - j];
        }
        s[k] = ss / k;
        c[k] = -cc / k;
    }
}

void sinh_cosh(const Taylor& a, Taylor& s, Taylor& c) {
    const int n = a.order();
    s = Taylor(n, std::sinh(a[0]));
    c = Taylor(n, std::cosh(a[0]));
    for (int k = 1; k <= n; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * a[j] * c[k - j];
            cc += j * a[j] * s[k - j];
        }
        s[k] = ss / k;
        c[k] = cc / k;
    }
}

}  // namespace

Taylor::Taylor(int order, double c0) : c_(static_cast<std::size_t>(std::max(order, 0)) + 1, 0.0) {
    c_[0] = c0;
}

Taylor::Taylor(std::vector<double> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) c_.push_back(0.0);
}

Taylor Taylor::variable(double value, int order) {
    Taylor t(order, value);
    if (order >= 1) t[1] = 1.0;
    return t;
}

double Taylor::derivative(int k) const {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return c_[static_cast<std::size_t>(k)] * f;
}

Taylor Taylor::differentiated() const {
    if (order() == 0) return Taylor(0, 0.0);
    Taylor d(order() - 1);
    for (int k = 1; k <= order(); ++k) d[k - 1] = k * c_[k];
    return d;
}

Taylor Taylor::integrated(double c0) const {
    Taylor r(order() + 1, c0);
    for (int k = 0; k <= order(); ++k) r[k + 1] = c_[k] / (k + 1);
    return r;
}

Taylor Taylor::truncated(int order) const {
    Taylor r(std::min(order, this->order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = c_[k];
    return r;
}

double Taylor::evaluate(double u) const {
    double acc = 0.0;
    for (int k = order(); k >= 0; --k) acc = acc * u + c_[k];
    return acc;
}

Taylor Taylor::compose(const Taylor& inner) const {
    if (inner[0] != 0.0) throw std::invalid_argument("Taylor::compose: inner series must vanish at 0");
    const int n = std::min(order(), inner.order());
    Taylor acc(n, c_[n]);
    const Taylor in = inner.truncated(n);
    for (int k = n - 1; k >= 0; --k) {
        acc = acc * in;
        acc[0] += c_[k];
    }
    return acc;
}

Taylor Taylor::reversion() const {
    if (c_[0] != 0.0 || order() < 1 || c_[1] == 0.0)
        throw std::invalid_argument("Taylor::reversion: need c0 = 0 and c1 != 0");
    const int n = order();
    // Fixed point g = (u - (f(g) - c1 g)) / c1; each pass fixes one more coefficient.
    Taylor higher = *this;
    higher[1] = 0.0;
    Taylor g(n);
    if (n >= 1) g[1] = 1.0 / c_[1];
    for (int pass = 1; pass < n; ++pass) {
        Taylor rest = higher.compose(g);
        Taylor next(n);
        next[1] = 1.0;
        for (int k = 0; k <= n; ++k) next[k] -= rest[k];
        g = next / c_[1];
    }
    return g;
}

Taylor& Taylor::operator+=(const Taylor& o) {
    c_.resize(static_cast<std::size_t>(common_order(*this, o)) + 1);
    for (int k = 0; k <= order(); ++k) c_[k] += o[k];
    return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
    c_.resize(static_cast<std::size_t>(common_order(*this, o)) + 1);
    for (int k = 0; k <= order(); ++k) c_[k] -= o[k];
    return *this;
}

Taylor& Taylor::operator*=(const Taylor& o) { return *this = *this * o; }
Taylor& Taylor::operator/=(const Taylor& o) { return *this = *this / o; }

Taylor& Taylor::operator*=(double a) {
    for (double& x : c_) x *= a;
    return *this;
}

Taylor& Taylor::operator/=(double a) {
    for (double& x : c_) x /= a;
    return *this;
}

Taylor operator-(const Taylor& a) { return a * -1.0; }
Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }

Taylor operator*(const Taylor& a, const Taylor& b) {
    const int n = common_order(a, b);
    Taylor r(n);
    for (int k = 0; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
        r[k] = acc;
    }
    return r;
}

Taylor operator/(const Taylor& a, const Taylor& b) {
    const int n = common_order(a, b);
    Taylor q(n);
    for (int k = 0; k <= n; ++k) {
        double acc = a[k];
        for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
        q[k] = acc / b[0];
    }
    return q;
}

Taylor operator+(Taylor a, double b) { return a += b; }
Taylor operator+(double a, Taylor b) { return b += a; }
Taylor operator-(Taylor a, double b) { return a -= b; }
Taylor operator-(double a, const Taylor& b) { return -b + a; }
Taylor operator*(Taylor a, double b) { return a *= b; }
Taylor operator*(double a, Taylor b) { return b *= a; }
Taylor operator/(Taylor a, double b) { return a /= b; }
Taylor operator/(double a, const Taylor& b) { return Taylor(b.order(), a) / b; }

Taylor sqrt(const Taylor& a) {
    const int n = a.order();
    Taylor r(n, std::sqrt(a[0]));
    for (int k = 1; k <= n; ++k) {
        double acc = a[k];
        for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
        r[k] = acc / (2.0 * r[0]);
    }
    return r;
}

Taylor exp(const Taylor& a) {
    const int n = a.order();
    Taylor r(n, std::exp(a[0]));
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * a[j] * r[k - j];
        r[k] = acc / k;
    }
    return r;
}

Taylor log(const Taylor& a) {
    const int n = a.order();
    Taylor r(n, std::log(a[0]));
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j < k; ++j) acc += j * r[j] * a[k - j];
        r[k] = (a[k] - acc / k) / a[0];
    }
    return r;
}

Taylor sin(const Taylor& a) {
    Taylor s, c;
    sin_cos(a, s, c);
    return s;
}

Taylor cos(const Taylor& a) {
    Taylor s, c;
    sin_cos(a, s, c);
    return c;
}

Taylor tan(const Taylor& a) {
    Taylor s, c;
    sin_cos(a, s, c);
    return s / c;
}

Taylor sinh(const Taylor& a) {
    Taylor s, c;
    sinh_cosh(a, s, c);
    return s;
}

Taylor cosh(const Taylor& a) {
    Taylor s, c;
    sinh_cosh(a, s, c);
    return c;
}

Taylor tanh(const Taylor& a) {
    Taylor s, c;
    sinh_cosh(a, s, c);
    return s / c;
}

Taylor abs(const Taylor& a) { return a[0] < 0.0 ? -a : a; }

Taylor pow(const Taylor& a, int n) {
    if (n < 0) return 1.0 / pow(a, -n);
    Taylor r(a.order(), 1.0);
    Taylor base = a;
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return r;
}

Taylor pow(const Taylor& a, double p) {
    if (p == std::round(p) && std::abs(p) < 64.0) return pow(a, static_cast<int>(p));
    return exp(p * log(a));
}

int min_order(std::span<const Taylor> v) {
    int n = v.empty() ? 0 : v.front().order();
    for (const Taylor& t : v) n = std::min(n, t.order());
    return n;
}

Taylor dot(std::span<const Taylor> a, std::span<const Taylor> b) {
    const int n = std::min(min_order(a), min_order(b));
    Taylor acc(n);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

TaylorVec differentiated(std::span<const Taylor> v) {
    TaylorVec out;
    out.reserve(v.size());
    for (const Taylor& t : v) out.push_back(t.differentiated());
    return out;
}

}  // namespace curvekit
