#include "frobtk/rational.hpp"

#include <mutex>

namespace frobtk {

std::string GaussRat::str() const {
    if (im == 0) return rat_str(re);
    std::string s = rat_str(re);
    s += (im > 0 ? "+" : "-");
    Rat a = im > 0 ? im : Rat(-im);
    s += rat_str(a) + "i";
    return s;
}

Rat binomial(unsigned long n, unsigned long k) {
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return Rat(z);
}

namespace {
std::mutex g_bern_mutex;
std::vector<Rat> g_bern = {Rat(1)};
}

Rat bernoulli_number(unsigned long n) {
    std::lock_guard<std::mutex> lock(g_bern_mutex);
    // sum_{k=0}^{m} C(m+1,k) B_k = 0 for m >= 1
    while (g_bern.size() <= n) {
        unsigned long m = g_bern.size();
        Rat s(0);
        for (unsigned long k = 0; k < m; ++k) s += binomial(m + 1, k) * g_bern[k];
        g_bern.push_back(-s / binomial(m + 1, m));
    }
    return g_bern[n];
}

Rat bernoulli_poly(unsigned long n, const Rat& x) {
    Rat acc(0), xp(1);
    // B_n(x) = sum_k C(n,k) B_{n-k} x^k
    for (unsigned long k = 0; k <= n; ++k) {
        acc += binomial(n, k) * bernoulli_number(n - k) * xp;
        xp *= x;
    }
    return acc;
}

std::string rat_str(const Rat& r) {
    return r.get_str();
}

Rat rat_from_str(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

}  // namespace frobtk
