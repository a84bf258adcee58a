#include <markov/cyclotomic.hpp>

namespace markov {

namespace {

// exact division of integer polynomials, divisor monic; ascending coeffs
std::vector<Int> divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        Int c = num[i + den.size() - 1];
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    return q;
}

}  // namespace

std::vector<Int> CyclotomicRing::cyclotomic_polynomial(unsigned n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<Int> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) p = divide_exact(std::move(p), cyclotomic_polynomial(d));
    return p;
}

CyclotomicRing::CyclotomicRing(unsigned n) : n_(n), phi_(cyclotomic_polynomial(n)) {}

CyclotomicRing::Elem CyclotomicRing::from_int(long v) const {
    Elem e = zero();
    if (!e.empty()) e[0] = v;
    return e;
}

CyclotomicRing::Elem CyclotomicRing::zeta_pow(long k) const {
    long m = k % static_cast<long>(n_);
    if (m < 0) m += n_;
    std::vector<Int> p(static_cast<std::size_t>(m) + 1, 0);
    p[static_cast<std::size_t>(m)] = 1;
    return reduce(std::move(p));
}

CyclotomicRing::Elem CyclotomicRing::add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

CyclotomicRing::Elem CyclotomicRing::sub(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

CyclotomicRing::Elem CyclotomicRing::neg(const Elem& a) const {
    Elem r = a;
    for (auto& c : r) c = -c;
    return r;
}

CyclotomicRing::Elem CyclotomicRing::mul(const Elem& a, const Elem& b) const {
    std::vector<Int> p(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
    }
    return reduce(std::move(p));
}

bool CyclotomicRing::is_zero(const Elem& a) const {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

CyclotomicRing::Elem CyclotomicRing::reduce(std::vector<Int> p) const {
    std::size_t deg = phi_.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
        Int c = p[i];
        if (c == 0) continue;
        p[i] = 0;
        for (std::size_t j = 0; j < deg; ++j) p[i - deg + j] -= c * phi_[j];
    }
    p.resize(deg, 0);
    return p;
}

}  // namespace markov
