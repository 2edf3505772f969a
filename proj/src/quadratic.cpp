#include "singmod/quadratic.hpp"

#include "int_kernel.hpp"
#include "singmod/error.hpp"
#include "singmod/phi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace singmod {

using detail::floor_div;

namespace {

constexpr std::int64_t kLiftCap = 4096;

} // namespace

std::string QuadForm::str() const {
    return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

void require_positive_definite(const QuadForm& q) {
    if (q.a <= 0 || q.d() <= 0) raise(ErrorKind::InvalidArgument, q.str() + " is not positive definite");
}

bool is_reduced(const QuadForm& q) noexcept {
    if (std::abs(q.b) > q.a || q.a > q.c) return false;
    if ((std::abs(q.b) == q.a || q.a == q.c) && q.b < 0) return false;
    return true;
}

QuadForm reduce(QuadForm q) {
    require_positive_definite(q);
    while (true) {
        // Translate b into (-a, a].
        const std::int64_t k = floor_div(q.a - q.b, 2 * q.a);
        if (k != 0) {
            q.c += k * q.b + k * k * q.a;
            q.b += 2 * k * q.a;
        }
        if (q.a > q.c) {
            std::swap(q.a, q.c);
            q.b = -q.b;
            continue;
        }
        break;
    }
    if (q.b < 0 && (q.b == -q.a || q.a == q.c)) q.b = -q.b;
    return q;
}

QuadForm transform(const QuadForm& q, std::int64_t alpha, std::int64_t beta, std::int64_t gamma,
                   std::int64_t delta) {
    if (alpha * delta - beta * gamma != 1) raise(ErrorKind::InvalidArgument, "transform needs determinant 1");
    QuadForm out;
    out.a = q.a * alpha * alpha + q.b * alpha * gamma + q.c * gamma * gamma;
    out.b = 2 * q.a * alpha * beta + q.b * (alpha * delta + beta * gamma) + 2 * q.c * gamma * delta;
    out.c = q.a * beta * beta + q.b * beta * delta + q.c * delta * delta;
    return out;
}

std::vector<QuadForm> class_representatives(std::int64_t d) {
    if (d <= 0 || (d % 4 != 0 && d % 4 != 3)) {
        raise(ErrorKind::UnsupportedDiscriminant, std::to_string(-d) + " is not a negative discriminant");
    }
    std::vector<QuadForm> out;
    for (std::int64_t a = 1; 3 * a * a <= d; ++a) {
        for (std::int64_t m = 0; m <= a; ++m) {
            for (int sign = 1; sign >= (m == 0 ? 1 : -1); sign -= 2) {
                const std::int64_t b = sign * m;
                const std::int64_t num = b * b + d;
                if (num % (4 * a) != 0) continue;
                const QuadForm q{a, b, num / (4 * a)};
                if (is_reduced(q)) out.push_back(q);
            }
        }
    }
    return out;
}

int omega(const QuadForm& q) {
    const QuadForm r = reduce(q);
    if (r.b == 0 && r.a == r.c) return 2;
    if (r.a == r.b && r.b == r.c) return 3;
    return 1;
}

Rational hurwitz_sum(std::int64_t d) {
    Rational sum = 0;
    for (const auto& q : class_representatives(d)) sum += Rational(1, omega(q));
    return sum;
}

HeegnerPoint heegner_point(const QuadForm& q) {
    require_positive_definite(q);
    return {q.b, q.a, q.d()};
}

std::vector<std::int64_t> level_roots(std::int64_t p, std::int64_t d) {
    std::vector<std::int64_t> out;
    const std::int64_t m = 4 * p;
    for (std::int64_t beta = 0; beta < 2 * p; ++beta) {
        if (mod_floor(beta * beta + d, m) == 0) out.push_back(beta);
    }
    return out;
}

QuadForm lift_to_level(const QuadForm& q, std::int64_t p, std::int64_t beta) {
    require_positive_definite(q);
    const std::int64_t d = q.d();
    if (p < 2) raise(ErrorKind::InvalidArgument, "level must be at least 2");
    if (mod_floor(beta * beta + d, 4 * p) != 0) {
        raise(ErrorKind::InvalidArgument, "beta^2 is not congruent to -d modulo 4p");
    }
    if (q.a % p == 0 && mod_floor(q.b - beta, 2 * p) == 0) return q;
    const QuadForm target = reduce(q);
    const std::int64_t base = mod_floor(beta, 2 * p);
    // Candidates b' = base + 2pk, visited by increasing |b'|, + before -.
    for (std::int64_t mag = 0; mag <= kLiftCap; ++mag) {
        for (int sign = 1; sign >= (mag == 0 ? 1 : -1); sign -= 2) {
            const std::int64_t bp = sign * mag;
            if (mod_floor(bp - base, 2 * p) != 0) continue;
            const std::int64_t n = (bp * bp + d) / 4;
            // a' runs over divisors of n that are multiples of p.
            std::vector<std::int64_t> divisors;
            for (std::int64_t t = 1; t * t <= n; ++t) {
                if (n % t != 0) continue;
                divisors.push_back(t);
                if (t != n / t) divisors.push_back(n / t);
            }
            std::sort(divisors.begin(), divisors.end());
            for (const std::int64_t ap : divisors) {
                if (ap % p != 0) continue;
                const QuadForm cand{ap, bp, n / ap};
                if (reduce(cand) == target) return cand;
            }
        }
    }
    raise(ErrorKind::LiftNotFound, "no level-" + std::to_string(p) + " representative of " + q.str() +
                                       " with |b| <= " + std::to_string(kLiftCap));
}

std::vector<std::int64_t> valid_discriminants(std::int64_t p, std::int64_t dmax) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= dmax; ++d) {
        if (is_square_class(p, d)) out.push_back(d);
    }
    return out;
}

} // namespace singmod
