#include "cascade/angular/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>

#include <boost/multiprecision/cpp_int.hpp>

namespace cascade {

namespace mp = boost::multiprecision;

namespace {

using Rational = mp::cpp_rational;
using BigInt = mp::cpp_int;

const BigInt& factorial(int n) {
    static std::shared_mutex mutex;
    // deque: references stay valid across growth
    static std::deque<BigInt> table{BigInt(1)};
    if (n < 0) throw std::logic_error("negative factorial");
    {
        std::shared_lock lock(mutex);
        if (n < static_cast<int>(table.size())) return table[n];
    }
    std::unique_lock lock(mutex);
    while (static_cast<int>(table.size()) <= n) table.push_back(table.back() * static_cast<int>(table.size()));
    return table[n];
}

// sign * sqrt(square) evaluated once in double precision.
double signed_sqrt(const Rational& square, int sign) {
    if (sign == 0 || square == 0) return 0.0;
    const double v = std::sqrt(square.convert_to<double>());
    return sign > 0 ? v : -v;
}

bool triangle(int ta, int tb, int tc) {
    return tc <= ta + tb && tc >= std::abs(ta - tb) && ((ta + tb + tc) % 2 == 0);
}

// Delta(abc)^2 = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!, arguments twice-valued.
Rational delta_squared(int ta, int tb, int tc) {
    return Rational(factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2) * factorial((-ta + tb + tc) / 2),
                    factorial((ta + tb + tc) / 2 + 1));
}

template <std::size_t N>
class SymbolCache {
public:
    bool find(const std::array<int, N>& key, double& out) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void store(const std::array<int, N>& key, double v) {
        std::unique_lock lock(mutex_);
        map_.emplace(key, v);
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::array<int, N>, double> map_;
};

void require_j(int tj) {
    if (tj < 0) throw MalformedAngularMomentum("negative angular momentum 2j = " + std::to_string(tj));
}

double compute_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    // Racah: sum over k of (-1)^k / [k!(j3-j2+k+m1)!(j3-j1+k-m2)!(j1+j2-j3-k)!(j1-k-m1)!(j2-k+m2)!]
    const int a1 = (tj3 - tj2 + tm1) / 2, a2 = (tj3 - tj1 - tm2) / 2;
    const int b1 = (tj1 + tj2 - tj3) / 2, b2 = (tj1 - tm1) / 2, b3 = (tj2 + tm2) / 2;
    const int kmin = std::max({0, -a1, -a2});
    const int kmax = std::min({b1, b2, b3});
    Rational sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        Rational term(BigInt(1), factorial(k) * factorial(a1 + k) * factorial(a2 + k) * factorial(b1 - k) *
                                     factorial(b2 - k) * factorial(b3 - k));
        if (k % 2) sum -= term;
        else sum += term;
    }
    if (sum == 0) return 0.0;
    Rational square = delta_squared(tj1, tj2, tj3) * sum * sum;
    square *= Rational(factorial((tj1 + tm1) / 2) * factorial((tj1 - tm1) / 2) * factorial((tj2 + tm2) / 2) *
                       factorial((tj2 - tm2) / 2) * factorial((tj3 + tm3) / 2) * factorial((tj3 - tm3) / 2));
    // (-1)^(j1 - j2 - m3); the exponent is an integer for valid arguments.
    const int phase = ((tj1 - tj2 - tm3) / 2) % 2 == 0 ? 1 : -1;
    return signed_sqrt(square, phase * (sum > 0 ? 1 : -1));
}

double compute_6j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    const int a[4] = {(tj1 + tj2 + tj3) / 2, (tj1 + tj5 + tj6) / 2, (tj4 + tj2 + tj6) / 2, (tj4 + tj5 + tj3) / 2};
    const int b[3] = {(tj1 + tj2 + tj4 + tj5) / 2, (tj2 + tj3 + tj5 + tj6) / 2, (tj3 + tj1 + tj6 + tj4) / 2};
    const int tmin = *std::max_element(a, a + 4);
    const int tmax = *std::min_element(b, b + 3);
    Rational sum = 0;
    for (int t = tmin; t <= tmax; ++t) {
        Rational term(factorial(t + 1), factorial(t - a[0]) * factorial(t - a[1]) * factorial(t - a[2]) *
                                            factorial(t - a[3]) * factorial(b[0] - t) * factorial(b[1] - t) *
                                            factorial(b[2] - t));
        if (t % 2) sum -= term;
        else sum += term;
    }
    if (sum == 0) return 0.0;
    Rational square = delta_squared(tj1, tj2, tj3) * delta_squared(tj1, tj5, tj6) * delta_squared(tj4, tj2, tj6) *
                      delta_squared(tj4, tj5, tj3) * sum * sum;
    return signed_sqrt(square, sum > 0 ? 1 : -1);
}

} // namespace

double wigner_3j_twice(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    require_j(tj1);
    require_j(tj2);
    require_j(tj3);
    if ((tj1 - tm1) % 2 || (tj2 - tm2) % 2 || (tj3 - tm3) % 2)
        throw MalformedAngularMomentum("3j symbol with j/m parity mismatch");
    if (tm1 + tm2 + tm3 != 0) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
    if (!triangle(tj1, tj2, tj3)) return 0.0;

    static SymbolCache<6> cache;
    const std::array<int, 6> key{tj1, tj2, tj3, tm1, tm2, tm3};
    double v;
    if (cache.find(key, v)) return v;
    v = compute_3j(tj1, tj2, tj3, tm1, tm2, tm3);
    cache.store(key, v);
    return v;
}

double wigner_6j_twice(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    for (int tj : {tj1, tj2, tj3, tj4, tj5, tj6}) require_j(tj);
    const int triads[4][3] = {{tj1, tj2, tj3}, {tj1, tj5, tj6}, {tj4, tj2, tj6}, {tj4, tj5, tj3}};
    for (const auto& t : triads)
        if ((t[0] + t[1] + t[2]) % 2) throw MalformedAngularMomentum("6j symbol triad with half-odd perimeter");
    for (const auto& t : triads)
        if (!triangle(t[0], t[1], t[2])) return 0.0;

    static SymbolCache<6> cache;
    const std::array<int, 6> key{tj1, tj2, tj3, tj4, tj5, tj6};
    double v;
    if (cache.find(key, v)) return v;
    v = compute_6j(tj1, tj2, tj3, tj4, tj5, tj6);
    cache.store(key, v);
    return v;
}

double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3) {
    return wigner_3j_twice(j1.twice(), j2.twice(), j3.twice(), m1.twice(), m2.twice(), m3.twice());
}

double wigner_6j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4, HalfInteger j5, HalfInteger j6) {
    return wigner_6j_twice(j1.twice(), j2.twice(), j3.twice(), j4.twice(), j5.twice(), j6.twice());
}

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J, HalfInteger M) {
    const double w = wigner_3j(j1, j2, J, m1, m2, -M);
    if (w == 0.0) return 0.0;
    const int e = (j1.twice() - j2.twice() + M.twice()) / 2;
    return (e % 2 == 0 ? 1.0 : -1.0) * std::sqrt(J.twice() + 1.0) * w;
}

} // namespace cascade
