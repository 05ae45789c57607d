#ifndef FROBTK_CHARACTERS_HPP
#define FROBTK_CHARACTERS_HPP

#include "frobtk/rational.hpp"

#include <vector>

namespace frobtk {

// Dirichlet character with exact values in Q(i). chi(a) = 0 when gcd(a,N) > 1.
struct DirichletCharacter {
    long modulus = 1;
    std::vector<GaussRat> values;  // index a in [0, N), values[a] = chi(a)
    bool odd = false;              // chi(-1) = -1

    const GaussRat& operator()(long n) const {
        long r = n % modulus;
        if (r < 0) r += modulus;
        return values[static_cast<size_t>(r)];
    }
    bool is_real() const {
        for (const auto& v : values)
            if (!v.is_rational()) return false;
        return true;
    }
};

enum class CharacterKind { Legendre3, Legendre4, Chi5, ConjugateOf, SquareOf };

DirichletCharacter build_character(CharacterKind kind, const DirichletCharacter* base = nullptr);

// Generalized Bernoulli number B_{n,chi} = N^{n-1} sum_a chi(a) B_n(a/N), exact.
GaussRat bernoulli_chi(const DirichletCharacter& chi, unsigned long n);

// L(chi, 1-n) = -B_{n,chi}/n for n >= 1, exact over Q(i).
GaussRat l_value_negative(const DirichletCharacter& chi, unsigned long n);

}  // namespace frobtk

#endif
