#include "iafc/wigner.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace iafc {
namespace {

using boost::multiprecision::cpp_int;

const cpp_int& fact(int n) {
    static const std::vector<cpp_int> table = [] {
        std::vector<cpp_int> f(129);
        f[0] = 1;
        for (int i = 1; i < static_cast<int>(f.size()); ++i) f[i] = f[i - 1] * i;
        return f;
    }();
    if (n < 0 || n >= static_cast<int>(table.size()))
        throw std::domain_error("wigner: angular momentum beyond supported range");
    return table[static_cast<size_t>(n)];
}

struct Rational {
    cpp_int num{0};
    cpp_int den{1};

    void add(cpp_int n, const cpp_int& d) {
        num = num * d + n * den;
        den *= d;
        reduce();
    }

    void reduce() {
        if (num == 0) {
            den = 1;
            return;
        }
        cpp_int g = boost::multiprecision::gcd(boost::multiprecision::abs(num), den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    long double to_long_double() const {
        return num.convert_to<long double>() / den.convert_to<long double>();
    }
};

// Delta^2(a b c) = (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!
void triangle_factor(HalfInt a, HalfInt b, HalfInt c, cpp_int& num, cpp_int& den) {
    num *= fact((a.twice() + b.twice() - c.twice()) / 2);
    num *= fact((a.twice() - b.twice() + c.twice()) / 2);
    num *= fact((-a.twice() + b.twice() + c.twice()) / 2);
    den *= fact((a.twice() + b.twice() + c.twice()) / 2 + 1);
}

int parity_sign(int exponent) { return (exponent % 2 + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3,
                HalfInt m1, HalfInt m2, HalfInt m3) {
    if (m1.twice() + m2.twice() + m3.twice() != 0) return 0.0;
    if (!projection_valid(j1, m1) || !projection_valid(j2, m2) || !projection_valid(j3, m3))
        return 0.0;
    if (!triangle_valid(j1, j2, j3)) return 0.0;

    const int t1 = j1.twice(), t2 = j2.twice(), t3 = j3.twice();
    const int u1 = m1.twice(), u2 = m2.twice(), u3 = m3.twice();

    const int kmin = std::max({0, (t2 - t3 - u1) / 2, (t1 - t3 + u2) / 2});
    const int kmax = std::min({(t1 + t2 - t3) / 2, (t1 - u1) / 2, (t2 + u2) / 2});
    if (kmax < kmin) return 0.0;

    Rational sum;
    for (int k = kmin; k <= kmax; ++k) {
        cpp_int d = fact(k);
        d *= fact((t1 + t2 - t3) / 2 - k);
        d *= fact((t1 - u1) / 2 - k);
        d *= fact((t2 + u2) / 2 - k);
        d *= fact((t3 - t2 + u1) / 2 + k);
        d *= fact((t3 - t1 - u2) / 2 + k);
        sum.add(k % 2 == 0 ? cpp_int(1) : cpp_int(-1), d);
    }
    if (sum.num == 0) return 0.0;

    cpp_int pre_num{1}, pre_den{1};
    triangle_factor(j1, j2, j3, pre_num, pre_den);
    pre_num *= fact((t1 + u1) / 2) * fact((t1 - u1) / 2);
    pre_num *= fact((t2 + u2) / 2) * fact((t2 - u2) / 2);
    pre_num *= fact((t3 + u3) / 2) * fact((t3 - u3) / 2);

    const long double root =
        sqrtl(pre_num.convert_to<long double>() / pre_den.convert_to<long double>());
    const int sign = parity_sign((t1 - t2 - u3) / 2);
    return static_cast<double>(sign * root * sum.to_long_double());
}

double wigner6j(HalfInt j1, HalfInt j2, HalfInt j3,
                HalfInt j4, HalfInt j5, HalfInt j6) {
    if (!triangle_valid(j1, j2, j3) || !triangle_valid(j1, j5, j6) ||
        !triangle_valid(j4, j2, j6) || !triangle_valid(j4, j5, j3))
        return 0.0;

    const int s1 = (j1.twice() + j2.twice() + j3.twice()) / 2;
    const int s2 = (j1.twice() + j5.twice() + j6.twice()) / 2;
    const int s3 = (j4.twice() + j2.twice() + j6.twice()) / 2;
    const int s4 = (j4.twice() + j5.twice() + j3.twice()) / 2;
    const int p1 = (j1.twice() + j2.twice() + j4.twice() + j5.twice()) / 2;
    const int p2 = (j2.twice() + j3.twice() + j5.twice() + j6.twice()) / 2;
    const int p3 = (j3.twice() + j1.twice() + j6.twice() + j4.twice()) / 2;

    const int kmin = std::max({s1, s2, s3, s4});
    const int kmax = std::min({p1, p2, p3});
    if (kmax < kmin) return 0.0;

    Rational sum;
    for (int k = kmin; k <= kmax; ++k) {
        cpp_int d = fact(k - s1) * fact(k - s2) * fact(k - s3) * fact(k - s4);
        d *= fact(p1 - k) * fact(p2 - k) * fact(p3 - k);
        cpp_int n = fact(k + 1);
        if (k % 2 != 0) n = -n;
        sum.add(n, d);
    }
    if (sum.num == 0) return 0.0;

    cpp_int pre_num{1}, pre_den{1};
    triangle_factor(j1, j2, j3, pre_num, pre_den);
    triangle_factor(j1, j5, j6, pre_num, pre_den);
    triangle_factor(j4, j2, j6, pre_num, pre_den);
    triangle_factor(j4, j5, j3, pre_num, pre_den);

    const long double root =
        sqrtl(pre_num.convert_to<long double>() / pre_den.convert_to<long double>());
    return static_cast<double>(root * sum.to_long_double());
}

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M) {
    if (m1.twice() + m2.twice() != M.twice()) return 0.0;
    const double three = wigner3j(j1, j2, J, m1, m2, -M);
    if (three == 0.0) return 0.0;
    const int sign = parity_sign((j1.twice() - j2.twice() + M.twice()) / 2);
    return sign * std::sqrt(static_cast<double>(multiplicity(J))) * three;
}

}  // namespace iafc
