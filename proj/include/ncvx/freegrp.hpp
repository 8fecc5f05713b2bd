// freegrp.hpp — exact combinatorial model of the group algebra C[F_n]:
// reduced words, sparse convolution, the length function, even-integer L_q
// norms for the canonical trace, and the Poisson semigroup.

#pragma once

#include "ncvx/report.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ncvx::freegrp {

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A reduced word in a free group. Letter i in {1..n} is the i-th
/// generator, -i its inverse; the empty word is the identity.
class Word {
public:
    Word() = default;

    static Word generator(int letter) {
        if (letter == 0) throw std::invalid_argument("Word: letter must be nonzero");
        Word w;
        w.letters_.push_back(letter);
        return w;
    }

    /// Reduces the given letter sequence (cancelling adjacent (i, -i)).
    static Word from_letters(const std::vector<int>& letters) {
        Word w;
        w.letters_.reserve(letters.size());
        for (int l : letters) {
            if (l == 0) throw std::invalid_argument("Word: letter must be nonzero");
            if (!w.letters_.empty() && w.letters_.back() == -l) {
                w.letters_.pop_back();
            } else {
                w.letters_.push_back(l);
            }
        }
        return w;
    }

    const std::vector<int>& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool is_identity() const { return letters_.empty(); }

    Word inverse() const {
        Word w;
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
            w.letters_.push_back(-*it);
        }
        return w;
    }

    friend Word operator*(const Word& a, const Word& b) {
        std::size_t i = a.letters_.size();
        std::size_t j = 0;
        while (i > 0 && j < b.letters_.size() && a.letters_[i - 1] == -b.letters_[j]) {
            --i;
            ++j;
        }
        Word w;
        w.letters_.reserve(i + b.letters_.size() - j);
        w.letters_.insert(w.letters_.end(), a.letters_.begin(), a.letters_.begin() + i);
        w.letters_.insert(w.letters_.end(), b.letters_.begin() + j, b.letters_.end());
        return w;
    }

    bool operator==(const Word&) const = default;

    /// Length-then-lexicographic order; used for canonical printing.
    bool operator<(const Word& o) const {
        if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
        return letters_ < o.letters_;
    }

private:
    std::vector<int> letters_;
};

inline Word word_multiply(const Word& a, const Word& b) { return a * b; }

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 0x9E3779B97F4A7C15ULL;
        for (int l : w.letters()) {
            h ^= static_cast<std::size_t>(l) + 0x9E3779B9ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// Exact complex rationals for the brute-force oracle mode.
struct RationalComplex {
    using Rat = boost::rational<long long>;
    Rat re{0}, im{0};

    RationalComplex() = default;
    RationalComplex(long long r) : re(r) {}
    RationalComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    RationalComplex& operator+=(const RationalComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool operator==(const RationalComplex&) const = default;
};

inline RationalComplex coeff_conj(const RationalComplex& c) { return {c.re, -c.im}; }
inline std::complex<double> coeff_conj(const std::complex<double>& c) { return std::conj(c); }
// Compares numerators: mixed rational/int operator== recurses under the
// C++20 rewritten-candidate rules with this Boost version.
inline bool coeff_is_zero(const RationalComplex& c) {
    return c.re.numerator() == 0 && c.im.numerator() == 0;
}
inline bool coeff_is_zero(const std::complex<double>& c) {
    return c.real() == 0.0 && c.imag() == 0.0;
}
inline double coeff_abs(const RationalComplex& c) {
    return std::hypot(boost::rational_cast<double>(c.re), boost::rational_cast<double>(c.im));
}
inline double coeff_abs(const std::complex<double>& c) { return std::abs(c); }

inline constexpr std::uint64_t kConvolutionBudget = 50'000'000;  // coefficient products
inline constexpr std::uint64_t kMomentBudget = 10'000'000;       // |supp|^m guard

/// Finitely supported map Word -> coefficient, x = sum x(g) lambda(g).
/// No explicit zeros are stored; floating-mode products trim coefficients
/// below 1e-16 of the largest.
template <class Coeff>
class Polynomial {
public:
    using Map = std::unordered_map<Word, Coeff, WordHash>;

    explicit Polynomial(int rank) : rank_(rank) {
        if (rank <= 0) throw std::invalid_argument("Polynomial: rank must be positive");
    }

    static Polynomial lambda(int rank, const Word& g, Coeff c) {
        Polynomial p(rank);
        p.add(g, c);
        return p;
    }

    int rank() const { return rank_; }
    const Map& coeffs() const { return coeffs_; }
    std::size_t support_size() const { return coeffs_.size(); }

    Coeff at(const Word& g) const {
        auto it = coeffs_.find(g);
        return it == coeffs_.end() ? Coeff{} : it->second;
    }

    void add(const Word& g, const Coeff& c) {
        for (int l : g.letters()) {
            if (std::abs(l) > rank_) {
                throw std::invalid_argument("Polynomial: letter outside the alphabet of F_n");
            }
        }
        auto [it, inserted] = coeffs_.try_emplace(g, c);
        if (!inserted) it->second = it->second + c;
        if (coeff_is_zero(it->second)) coeffs_.erase(it);
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        require_same_rank(a, b);
        Polynomial r = a;
        for (const auto& [g, c] : b.coeffs_) r.add(g, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        require_same_rank(a, b);
        Polynomial r = a;
        for (const auto& [g, c] : b.coeffs_) r.add(g, Coeff{} - c);
        return r;
    }

    /// Entries in canonical (length, lexicographic) order.
    std::vector<std::pair<Word, Coeff>> sorted_entries() const {
        std::vector<std::pair<Word, Coeff>> v(coeffs_.begin(), coeffs_.end());
        std::sort(v.begin(), v.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }

private:
    static void require_same_rank(const Polynomial& a, const Polynomial& b) {
        if (a.rank_ != b.rank_) throw std::invalid_argument("Polynomial: rank mismatch");
    }

    int rank_;
    Map coeffs_;

    template <class C>
    friend Polynomial<C> poly_multiply(const Polynomial<C>&, const Polynomial<C>&);
};

using GroupPolynomial = Polynomial<std::complex<double>>;
using ExactPolynomial = Polynomial<RationalComplex>;

/// (xy)(g) = sum over hk = g of x(h) y(k): exact sparse convolution with
/// word reduction. Floating mode trims coefficients below 1e-16 of the max.
template <class Coeff>
Polynomial<Coeff> poly_multiply(const Polynomial<Coeff>& x, const Polynomial<Coeff>& y) {
    if (x.rank() != y.rank()) throw std::invalid_argument("poly_multiply: rank mismatch");
    const std::uint64_t work =
        static_cast<std::uint64_t>(x.support_size()) * y.support_size();
    if (work > kConvolutionBudget) {
        throw ResourceError("poly_multiply: convolution budget exceeded");
    }
    Polynomial<Coeff> r(x.rank());
    for (const auto& [h, ch] : x.coeffs()) {
        for (const auto& [k, ck] : y.coeffs()) {
            r.add(h * k, ch * ck);
        }
    }
    if constexpr (std::is_same_v<Coeff, std::complex<double>>) {
        double top = 0.0;
        for (const auto& [g, c] : r.coeffs()) top = std::max(top, coeff_abs(c));
        if (top > 0.0) {
            std::vector<Word> drop;
            for (const auto& [g, c] : r.coeffs()) {
                if (coeff_abs(c) < 1e-16 * top) drop.push_back(g);
            }
            for (const Word& g : drop) r.add(g, -r.at(g));
        }
    }
    return r;
}

template <class Coeff>
Polynomial<Coeff> adjoint(const Polynomial<Coeff>& x) {
    Polynomial<Coeff> r(x.rank());
    for (const auto& [g, c] : x.coeffs()) r.add(g.inverse(), coeff_conj(c));
    return r;
}

template <class Coeff>
Coeff canonical_trace(const Polynomial<Coeff>& x) {
    return x.at(Word());
}

/// tau(x y) evaluated without forming the product: sum_g x(g) y(g^-1).
template <class Coeff>
Coeff trace_of_product(const Polynomial<Coeff>& x, const Polynomial<Coeff>& y) {
    Coeff acc{};
    const bool x_smaller = x.support_size() <= y.support_size();
    const auto& small = x_smaller ? x : y;
    const auto& large = x_smaller ? y : x;
    for (const auto& [g, c] : small.coeffs()) {
        acc += c * large.at(g.inverse());
    }
    return acc;
}

/// tau((x* x)^m), the 2m-th moment of |x|; exact in rational mode.
template <class Coeff>
Coeff moment_even(const Polynomial<Coeff>& x, int m) {
    if (m < 1) throw std::invalid_argument("moment_even: require m >= 1");
    double budget = 1.0;
    for (int i = 0; i < m; ++i) budget *= static_cast<double>(std::max<std::size_t>(x.support_size(), 1));
    if (budget > static_cast<double>(kMomentBudget)) {
        throw ResourceError("moment_even: |support|^m exceeds the term budget");
    }
    Polynomial<Coeff> y = poly_multiply(adjoint(x), x);
    if (m == 1) return canonical_trace(y);
    Polynomial<Coeff> z = y;
    for (int k = 2; k < m; ++k) z = poly_multiply(z, y);
    return trace_of_product(z, y);
}

double lq_norm_even(const GroupPolynomial& x, int q);
double l2_norm(const GroupPolynomial& x);

/// ||x||_q / ||x||_2 for x homogeneous of degree k (support inside S_k).
double khintchine_ratio(const GroupPolynomial& x, int q);

/// Degree of a homogeneous polynomial; throws if support mixes lengths.
int homogeneous_degree(const GroupPolynomial& x);

template <class Coeff>
Polynomial<Coeff> homogeneous_component(const Polynomial<Coeff>& x, int k) {
    Polynomial<Coeff> r(x.rank());
    for (const auto& [g, c] : x.coeffs()) {
        if (g.length() == k) r.add(g, c);
    }
    return r;
}

/// Poisson semigroup (P_t x)(g) = e^(-t |g|) x(g).
GroupPolynomial poisson_apply(const GroupPolynomial& x, double t);

/// All reduced words of length exactly k (S_k) or at most `radius` (the ball).
std::vector<Word> sphere(int rank, int k);
std::vector<Word> ball(int rank, int radius, std::uint64_t budget = 2'000'000);

/// Certified lower bound on ||x||_inf via power iteration of the left
/// convolution operator compressed to l2 of the ball of the given radius;
/// every reported Rayleigh value only underestimates the true norm. Asserts
/// the Haagerup bound lower <= (k+1) ||x||_2 + 1e-9 for degree-k input.
VerificationReport haagerup_lower_check(const GroupPolynomial& x, int radius,
                                        std::uint64_t seed = 1);

/// Text format: one entry per line, `coeff_re coeff_im : letters...`
/// with `:` alone for the identity word. 17 significant digits, bit-exact
/// round trip. `rank` zero means infer from the largest letter.
std::string format_polynomial(const GroupPolynomial& x);
GroupPolynomial parse_polynomial(const std::string& text, int rank = 0);

}  // namespace ncvx::freegrp
