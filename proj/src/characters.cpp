#include "frobtk/characters.hpp"

#include <numeric>
#include <stdexcept>

namespace frobtk {

namespace {

DirichletCharacter from_table(long N, std::vector<GaussRat> vals) {
    DirichletCharacter chi;
    chi.modulus = N;
    chi.values = std::move(vals);
    chi.odd = (chi.values[static_cast<size_t>(N - 1)] == GaussRat(-1));
    return chi;
}

}  // namespace

DirichletCharacter build_character(CharacterKind kind, const DirichletCharacter* base) {
    switch (kind) {
        case CharacterKind::Legendre3:
            return from_table(3, {GaussRat(0), GaussRat(1), GaussRat(-1)});
        case CharacterKind::Legendre4:
            return from_table(4, {GaussRat(0), GaussRat(1), GaussRat(0), GaussRat(-1)});
        case CharacterKind::Chi5: {
            // chi(2) = i fixes everything by multiplicativity: 2^2=4, 2^3=3 mod 5
            GaussRat i(Rat(0), Rat(1));
            return from_table(5, {GaussRat(0), GaussRat(1), i, -i, GaussRat(-1)});
        }
        case CharacterKind::ConjugateOf: {
            if (!base) throw std::invalid_argument("conjugate-of needs a base character");
            DirichletCharacter chi = *base;
            for (auto& v : chi.values) v = v.conj();
            return chi;
        }
        case CharacterKind::SquareOf: {
            if (!base) throw std::invalid_argument("square-of needs a base character");
            DirichletCharacter chi = *base;
            for (auto& v : chi.values) v = v * v;
            chi.odd = (chi.values[static_cast<size_t>(chi.modulus - 1)] == GaussRat(-1));
            return chi;
        }
    }
    throw std::invalid_argument("unknown character kind");
}

GaussRat bernoulli_chi(const DirichletCharacter& chi, unsigned long n) {
    GaussRat acc;
    long N = chi.modulus;
    for (long a = 1; a <= N; ++a) {
        const GaussRat& c = chi(a);
        if (c.is_zero()) continue;
        acc += c * GaussRat(bernoulli_poly(n, Rat(a, N)));
    }
    Rat scale(1);
    for (unsigned long k = 1; k < n; ++k) scale *= N;
    return GaussRat(scale) * acc;
}

GaussRat l_value_negative(const DirichletCharacter& chi, unsigned long n) {
    if (n == 0) throw std::invalid_argument("l_value_negative: n must be >= 1");
    return -bernoulli_chi(chi, n) / GaussRat(Rat(static_cast<long>(n)));
}

}  // namespace frobtk
