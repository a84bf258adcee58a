#pragma once

#include <markov/scalar.hpp>
#include <vector>

namespace markov {

/// Exact arithmetic in Z[zeta_n] represented as integer polynomials reduced
/// modulo the n-th cyclotomic polynomial.  Supports exactly the ring
/// operations needed to evaluate Vieta words on eta-images of roots of
/// unity.
class CyclotomicRing {
  public:
    using Elem = std::vector<Int>;  // coefficients, degree < phi(n)

    explicit CyclotomicRing(unsigned n);

    unsigned order() const { return n_; }
    unsigned degree() const { return static_cast<unsigned>(phi_.size() - 1); }

    Elem zero() const { return Elem(degree(), 0); }
    Elem from_int(long v) const;
    /// zeta^k (k taken mod n, negatives allowed).
    Elem zeta_pow(long k) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    bool equal(const Elem& a, const Elem& b) const { return a == b; }
    bool is_zero(const Elem& a) const;

    /// n-th cyclotomic polynomial, ascending coefficients (exposed for tests).
    static std::vector<Int> cyclotomic_polynomial(unsigned n);

  private:
    Elem reduce(std::vector<Int> p) const;

    unsigned n_;
    std::vector<Int> phi_;  // monic, ascending
};

}  // namespace markov
