#ifndef HEUNQES_POLYNOMIAL_HPP
#define HEUNQES_POLYNOMIAL_HPP

#include "heunqes/rational.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heunqes {

/// Dense univariate polynomial over a commutative ring T, coefficients stored
/// in ascending degree. The zero polynomial has an empty coefficient list and
/// degree() == -1. T may itself be a Polynomial, which is how the bivariate
/// layer is built.
template <class T>
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(T constant) { coeffs_.push_back(std::move(constant)); trim(); }

    explicit Polynomial(int constant) : Polynomial(T(constant)) {}

    explicit Polynomial(std::vector<T> ascending) : coeffs_(std::move(ascending)) { trim(); }

    Polynomial(std::initializer_list<T> ascending) : coeffs_(ascending) { trim(); }

    /// The monomial c * x^k.
    static Polynomial monomial(T c, std::size_t k)
    {
        std::vector<T> v(k + 1, T(0));
        v[k] = std::move(c);
        return Polynomial(std::move(v));
    }

    static Polynomial identity() { return monomial(T(1), 1); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<T>& coefficients() const { return coeffs_; }

    /// Coefficient of x^k; zero beyond the stored degree.
    T coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : T(0); }

    T leading() const { return is_zero() ? T(0) : coeffs_.back(); }

    Polynomial& operator+=(const Polynomial& rhs)
    {
        if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), T(0));
        for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& rhs)
    {
        if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), T(0));
        for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    Polynomial operator-() const
    {
        Polynomial r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<T> prod(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(prod));
    }

    Polynomial& operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

    Polynomial& operator*=(const T& s)
    {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }

    friend Polynomial operator*(Polynomial p, const T& s) { return p *= s; }
    friend Polynomial operator*(const T& s, Polynomial p) { return p *= s; }

    Polynomial& operator/=(const T& s)
    {
        for (auto& c : coeffs_) c /= s;
        trim();
        return *this;
    }

    friend Polynomial operator/(Polynomial p, const T& s) { return p /= s; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    Polynomial derivative() const
    {
        if (coeffs_.size() <= 1) return Polynomial();
        std::vector<T> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * T(static_cast<int>(k));
        return Polynomial(std::move(d));
    }

    /// Horner evaluation at a point of the coefficient ring.
    T operator()(const T& x) const
    {
        T acc(0);
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
        return acc;
    }

    /// Horner evaluation in another ring V, embedding coefficients via `embed`.
    template <class V, class Embed>
    V eval_in(const V& x, Embed embed) const
    {
        V acc(0);
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + embed(coeffs_[k]);
        return acc;
    }

    /// Coefficient-wise conversion, e.g. Rational -> double.
    template <class V, class Convert>
    Polynomial<V> map(Convert convert) const
    {
        std::vector<V> out(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] = convert(coeffs_[k]);
        return Polynomial<V>(std::move(out));
    }

    /// Euclidean division; requires T to be a field.
    friend std::pair<Polynomial, Polynomial> divrem(Polynomial num, const Polynomial& den)
    {
        if (den.is_zero()) throw std::domain_error("polynomial division by zero");
        Polynomial quot;
        if (num.degree() >= den.degree()) {
            quot.coeffs_.assign(static_cast<std::size_t>(num.degree() - den.degree()) + 1, T(0));
            const T lead = den.leading();
            while (!num.is_zero() && num.degree() >= den.degree()) {
                const std::size_t shift = static_cast<std::size_t>(num.degree() - den.degree());
                const T factor = num.leading() / lead;
                quot.coeffs_[shift] = factor;
                for (std::size_t k = 0; k < den.coeffs_.size(); ++k)
                    num.coeffs_[shift + k] -= factor * den.coeffs_[k];
                num.coeffs_.pop_back();
                num.trim();
            }
            quot.trim();
        }
        return {std::move(quot), std::move(num)};
    }

    std::string str(const std::string& var = "x") const
    {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            if (coeffs_[k] == T(0)) continue;
            if (!first) os << " + ";
            os << "(" << coeffs_[k] << ")";
            if (k >= 1) os << "*" << var;
            if (k >= 2) os << "^" << k;
            first = false;
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

/// Monic gcd via the Euclidean algorithm; requires a field T. gcd(0,0) = 0.
template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b)
{
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a /= a.leading();
    return a;
}

/// Removes repeated factors: p / gcd(p, p').
template <class T>
Polynomial<T> square_free_part(const Polynomial<T>& p)
{
    if (p.degree() <= 1) return p;
    auto g = gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    return divrem(p, g).first;
}

// ---------------------------------------------------------------------------
// Real root machinery (Sturm chains, bisection isolation, Newton polish).
// ---------------------------------------------------------------------------

namespace detail {

/// Scales a double polynomial so its largest |coefficient| is 1 and discards
/// relative noise below `drop`. Keeps Sturm remainder chains well conditioned.
inline Polynomial<double> normalized(const Polynomial<double>& p, double drop = 1e-14)
{
    if (p.is_zero()) return p;
    double amax = 0.0;
    for (const double c : p.coefficients()) amax = std::max(amax, std::abs(c));
    if (amax == 0.0) return Polynomial<double>();
    std::vector<double> out(p.coefficients().size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double c = p.coeff(k) / amax;
        out[k] = std::abs(c) < drop ? 0.0 : c;
    }
    return Polynomial<double>(std::move(out));
}

} // namespace detail

/// Sturm chain p, p', -rem(...), ... ; works for exact scalars as-is and for
/// doubles with per-step renormalization.
template <class T>
std::vector<Polynomial<T>> sturm_chain(const Polynomial<T>& p)
{
    std::vector<Polynomial<T>> chain;
    if (p.is_zero()) return chain;
    chain.push_back(p);
    Polynomial<T> d = p.derivative();
    while (!d.is_zero()) {
        if constexpr (std::is_same_v<T, double>) d = detail::normalized(d);
        chain.push_back(d);
        const auto& a = chain[chain.size() - 2];
        const auto& b = chain.back();
        if (b.degree() == 0) break;
        auto r = -divrem(a, b).second;
        d = std::move(r);
    }
    return chain;
}

/// Sign changes of the chain at x; x = +/-inf is encoded by `at_infinity`.
template <class T>
int sturm_sign_changes(const std::vector<Polynomial<T>>& chain, const T& x)
{
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        const int s = sign_of(p(x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

template <class T>
int sturm_sign_changes_at_infinity(const std::vector<Polynomial<T>>& chain, bool positive)
{
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        if (p.is_zero()) continue;
        int s = sign_of(p.leading());
        if (!positive && p.degree() % 2 == 1) s = -s;
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

/// Number of distinct real roots in (a, b]; a < b required.
template <class T>
int sturm_count(const std::vector<Polynomial<T>>& chain, const T& a, const T& b)
{
    return sturm_sign_changes(chain, a) - sturm_sign_changes(chain, b);
}

/// Cauchy bound: all real roots lie in (-B, B).
inline double root_bound(const Polynomial<double>& p)
{
    const double lead = std::abs(p.leading());
    double m = 0.0;
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p.coeff(static_cast<std::size_t>(k))));
    return 1.0 + (lead > 0.0 ? m / lead : 0.0);
}

namespace detail {

/// Newton iteration with bisection fallback on a bracket [lo, hi] that
/// contains exactly one root with a sign change.
inline double polish_root(const Polynomial<double>& p, const Polynomial<double>& dp,
                          double lo, double hi)
{
    double flo = p(lo);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = p(x);
        if (fx == 0.0) return x;
        if ((fx > 0) == (flo > 0)) lo = x; else hi = x;
        const double d = dp(x);
        double next = (d != 0.0) ? x - fx / d : x;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-16 * (1.0 + std::abs(next))) return next;
        x = next;
    }
    return x;
}

} // namespace detail

/// All distinct real roots of a double polynomial, ascending. Roots are
/// isolated with a Sturm chain and polished by safeguarded Newton.
inline std::vector<double> real_roots(const Polynomial<double>& p0)
{
    const Polynomial<double> p = detail::normalized(p0);
    std::vector<double> roots;
    if (p.degree() <= 0) return roots;
    if (p.degree() == 1) {
        roots.push_back(-p.coeff(0) / p.coeff(1));
        return roots;
    }
    const auto chain = sturm_chain(p);
    const Polynomial<double> dp = p.derivative();
    const double bound = root_bound(p);

    struct Segment { double lo, hi; int count; };
    std::vector<Segment> stack;
    const int total = sturm_count(chain, -bound, bound);
    if (total > 0) stack.push_back({-bound, bound, total});

    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        if (seg.count == 1) {
            // Shrink until a definite sign change brackets the root, then polish.
            double lo = seg.lo, hi = seg.hi;
            while (!(p(lo) * p(hi) < 0.0) && hi - lo > 1e-15 * (1.0 + std::abs(lo))) {
                const double mid = 0.5 * (lo + hi);
                if (sturm_count(chain, lo, mid) == 1) hi = mid; else lo = mid;
            }
            roots.push_back(p(lo) * p(hi) < 0.0 ? detail::polish_root(p, dp, lo, hi)
                                                : 0.5 * (lo + hi));
            continue;
        }
        double mid = 0.5 * (seg.lo + seg.hi);
        // Avoid splitting exactly on a root.
        for (int shift = 0; p(mid) == 0.0 && shift < 8; ++shift)
            mid += 1e-12 * (1.0 + std::abs(mid));
        const int left = sturm_count(chain, seg.lo, mid);
        if (left > 0) stack.push_back({seg.lo, mid, left});
        if (seg.count - left > 0) stack.push_back({mid, seg.hi, seg.count - left});
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Distinct real roots of an exact rational polynomial, as doubles. The
/// square-free reduction and the Sturm isolation run in exact arithmetic;
/// only the final polish is floating point.
inline std::vector<double> real_roots(const Polynomial<Rational>& p0)
{
    std::vector<double> roots;
    if (p0.degree() <= 0) return roots;
    const Polynomial<Rational> p = square_free_part(p0);
    if (p.degree() == 1) {
        roots.push_back(to_double(-p.coeff(0) / p.coeff(1)));
        return roots;
    }
    const auto chain = sturm_chain(p);

    Rational bound(1);
    {
        Rational m(0);
        const Rational lead = abs(p.leading());
        for (int k = 0; k < p.degree(); ++k) {
            const Rational a = abs(p.coeff(static_cast<std::size_t>(k)));
            if (a > m) m = a;
        }
        bound += m / lead;
    }

    const Polynomial<double> pd = p.template map<double>([](const Rational& c) { return to_double(c); });
    const Polynomial<double> dpd = pd.derivative();

    struct Segment { Rational lo, hi; int count; };
    std::vector<Segment> stack;
    const int total = sturm_count(chain, Rational(-bound), bound);
    if (total > 0) stack.push_back({-bound, bound, total});

    while (!stack.empty()) {
        Segment seg = stack.back();
        stack.pop_back();
        if (seg.count == 1) {
            // Exact bisection down to a narrow bracket, then double polish.
            while (seg.hi - seg.lo > Rational(1, 1000000)) {
                const Rational mid = (seg.lo + seg.hi) / 2;
                if (p(mid) == 0) { seg.lo = mid; seg.hi = mid; break; }
                if (sturm_count(chain, seg.lo, mid) == 1) seg.hi = mid; else seg.lo = mid;
            }
            if (seg.lo == seg.hi) { roots.push_back(to_double(seg.lo)); continue; }
            roots.push_back(detail::polish_root(pd, dpd, to_double(seg.lo), to_double(seg.hi)));
            continue;
        }
        Rational mid = (seg.lo + seg.hi) / 2;
        if (p(mid) == 0) {
            roots.push_back(to_double(mid));
            // exclusion band around mid must contain no other root
            Rational eps = (seg.hi - seg.lo) / 1000000;
            while (sturm_count(chain, Rational(mid - eps), Rational(mid + eps)) > 1) eps /= 2;
            const int left = sturm_count(chain, seg.lo, Rational(mid - eps));
            const int right = sturm_count(chain, Rational(mid + eps), seg.hi);
            if (left > 0) stack.push_back({seg.lo, mid - eps, left});
            if (right > 0) stack.push_back({mid + eps, seg.hi, right});
            continue;
        }
        const int left = sturm_count(chain, seg.lo, mid);
        if (left > 0) stack.push_back({seg.lo, mid, left});
        if (seg.count - left > 0) stack.push_back({mid, seg.hi, seg.count - left});
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Exact count of distinct real roots in the open interval (lo, hi); either
/// bound may be infinite. Endpoints that happen to be roots are nudged inward
/// by a machine-epsilon-scale offset, as the intervals are open.
inline int count_real_roots_in(const Polynomial<double>& p0, double lo, double hi)
{
    const Polynomial<double> p = detail::normalized(p0);
    if (p.degree() <= 0) return 0;
    const auto chain = sturm_chain(p);
    const auto nudge = [&](double x, double dir) {
        while (p(x) == 0.0) x += dir * 1e-14 * (1.0 + std::abs(x));
        return x;
    };
    const int v_lo = std::isinf(lo) ? sturm_sign_changes_at_infinity(chain, false)
                                    : sturm_sign_changes(chain, nudge(lo, +1.0));
    const int v_hi = std::isinf(hi) ? sturm_sign_changes_at_infinity(chain, true)
                                    : sturm_sign_changes(chain, nudge(hi, -1.0));
    return v_lo - v_hi;
}

} // namespace heunqes

#endif // HEUNQES_POLYNOMIAL_HPP
