#include "ncvx/freegrp.hpp"

#include "ncvx/rng.hpp"

#include <cmath>
#include <sstream>

namespace ncvx::freegrp {

double l2_norm(const GroupPolynomial& x) {
    double acc = 0.0;
    for (const auto& [g, c] : x.coeffs()) acc += std::norm(c);
    return std::sqrt(acc);
}

double lq_norm_even(const GroupPolynomial& x, int q) {
    if (q < 2 || q % 2 != 0) {
        throw std::invalid_argument("lq_norm_even: q must be an even integer >= 2");
    }
    if (x.support_size() == 0) return 0.0;
    if (q == 2) return l2_norm(x);
    const int m = q / 2;
    const std::complex<double> moment = moment_even(x, m);
    const double value = std::max(moment.real(), 0.0);
    return std::pow(value, 1.0 / q);
}

int homogeneous_degree(const GroupPolynomial& x) {
    if (x.support_size() == 0) {
        throw std::invalid_argument("homogeneous_degree: zero polynomial");
    }
    int k = -1;
    for (const auto& [g, c] : x.coeffs()) {
        if (k < 0) {
            k = g.length();
        } else if (g.length() != k) {
            throw std::invalid_argument("homogeneous_degree: support mixes word lengths");
        }
    }
    return k;
}

double khintchine_ratio(const GroupPolynomial& x, int q) {
    homogeneous_degree(x);  // rejects non-homogeneous input
    const double l2 = l2_norm(x);
    if (l2 == 0.0) throw std::invalid_argument("khintchine_ratio: zero polynomial");
    return lq_norm_even(x, q) / l2;
}

GroupPolynomial poisson_apply(const GroupPolynomial& x, double t) {
    if (t < 0.0) throw std::invalid_argument("poisson_apply: t must be nonnegative");
    GroupPolynomial r(x.rank());
    for (const auto& [g, c] : x.coeffs()) {
        r.add(g, c * std::exp(-t * g.length()));
    }
    return r;
}

namespace {

void extend_words(std::vector<Word>& out, const Word& w, int rank, int remaining) {
    if (remaining == 0) return;
    const int last = w.letters().empty() ? 0 : w.letters().back();
    for (int l = -rank; l <= rank; ++l) {
        if (l == 0 || l == -last) continue;
        Word next = w * Word::generator(l);
        out.push_back(next);
        extend_words(out, next, rank, remaining - 1);
    }
}

double ball_size(int rank, int radius) {
    // 1 + 2n ((2n-1)^r - 1)/(2n-2), with the n = 1/2... degenerate case 2n = 2.
    double size = 1.0, shell = 1.0;
    for (int k = 1; k <= radius; ++k) {
        shell *= (k == 1) ? 2.0 * rank : 2.0 * rank - 1.0;
        size += shell;
    }
    return size;
}

}  // namespace

std::vector<Word> sphere(int rank, int k) {
    if (rank <= 0 || k < 0) throw std::invalid_argument("sphere: bad arguments");
    std::vector<Word> all = ball(rank, k);
    std::vector<Word> out;
    for (Word& w : all) {
        if (w.length() == k) out.push_back(std::move(w));
    }
    return out;
}

std::vector<Word> ball(int rank, int radius, std::uint64_t budget) {
    if (rank <= 0 || radius < 0) throw std::invalid_argument("ball: bad arguments");
    if (ball_size(rank, radius) > static_cast<double>(budget)) {
        throw ResourceError("ball: enumeration budget exceeded");
    }
    std::vector<Word> out;
    out.push_back(Word());
    extend_words(out, Word(), rank, radius);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Left convolution by x compressed to the span of `basis` (an l2 ball).
class CompressedConvolution {
public:
    CompressedConvolution(const GroupPolynomial& x, const std::vector<Word>& basis)
        : x_(x), basis_(basis) {
        for (std::size_t i = 0; i < basis.size(); ++i) index_[basis[i]] = i;
    }

    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& v) const {
        std::vector<std::complex<double>> out(basis_.size(), 0.0);
        for (const auto& [g, c] : x_.coeffs()) {
            for (std::size_t i = 0; i < basis_.size(); ++i) {
                if (v[i] == std::complex<double>(0.0)) continue;
                auto it = index_.find(g * basis_[i]);
                if (it != index_.end()) out[it->second] += c * v[i];
            }
        }
        return out;
    }

private:
    const GroupPolynomial& x_;
    const std::vector<Word>& basis_;
    std::unordered_map<Word, std::size_t, WordHash> index_;
};

double vec_norm(const std::vector<std::complex<double>>& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

}  // namespace

VerificationReport haagerup_lower_check(const GroupPolynomial& x, int radius,
                                        std::uint64_t seed) {
    VerificationReport report;
    report.command = "haagerup_lower_check";
    report.seed = seed;
    const int k = homogeneous_degree(x);
    if (radius < k + 2) {
        throw std::invalid_argument("haagerup_lower_check: require radius >= degree + 2");
    }
    report.add_param("rank", static_cast<std::int64_t>(x.rank()));
    report.add_param("degree", static_cast<std::int64_t>(k));
    report.add_param("radius", static_cast<std::int64_t>(radius));

    const std::vector<Word> basis = ball(x.rank(), radius);
    CompressedConvolution op(x, basis);
    const GroupPolynomial xs = adjoint(x);
    CompressedConvolution op_adj(xs, basis);

    // Rayleigh quotients ||T v|| / ||v|| never exceed ||T|| <= ||x||_inf, so
    // the running maximum is a certified lower bound. Start vectors: the
    // coefficients of x itself (sharp for radial elements) and a seeded
    // random vector.
    double best = 0.0;
    auto iterate = [&](std::vector<std::complex<double>> v) {
        double nv = vec_norm(v);
        if (nv == 0.0) return;
        for (auto& z : v) z /= nv;
        double prev = 0.0;
        for (int it = 0; it < 500; ++it) {
            std::vector<std::complex<double>> w = op.apply(v);
            const double est = vec_norm(w);
            best = std::max(best, est);
            if (est == 0.0) return;
            v = op_adj.apply(w);
            const double nn = vec_norm(v);
            if (nn == 0.0) return;
            for (auto& z : v) z /= nn;
            if (it > 0 && std::abs(est - prev) < 1e-10 * est) break;
            prev = est;
        }
    };

    std::vector<std::complex<double>> from_x(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) from_x[i] = x.at(basis[i]);
    iterate(std::move(from_x));

    auto gen = rng::engine_for(seed, 0);
    std::normal_distribution<double> normal;
    std::vector<std::complex<double>> random_start(basis.size());
    for (auto& z : random_start) z = {normal(gen), normal(gen)};
    iterate(std::move(random_start));

    const double l2 = l2_norm(x);
    const double haagerup = (k + 1) * l2;
    report.check("lower_bound_vs_haagerup", best, haagerup + 1e-9, best <= haagerup + 1e-9);
    report.check("lower_bound", best, haagerup, true);
    report.finalize();
    return report;
}

std::string format_polynomial(const GroupPolynomial& x) {
    std::ostringstream os;
    for (const auto& [g, c] : x.sorted_entries()) {
        os << format_double(c.real()) << " " << format_double(c.imag()) << " :";
        for (int l : g.letters()) os << " " << l;
        os << "\n";
    }
    return os.str();
}

GroupPolynomial parse_polynomial(const std::string& text, int rank) {
    struct Entry {
        Word w;
        std::complex<double> c;
    };
    std::vector<Entry> entries;
    int max_letter = 1;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        std::istringstream ls(line);
        double re = 0.0, im = 0.0;
        std::string colon;
        if (!(ls >> re)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank
            throw std::invalid_argument("parse_polynomial: bad coefficient on line " +
                                        std::to_string(lineno));
        }
        if (!(ls >> im >> colon) || colon != ":") {
            throw std::invalid_argument("parse_polynomial: expected `re im :` on line " +
                                        std::to_string(lineno));
        }
        std::vector<int> letters;
        int l = 0;
        while (ls >> l) {
            if (l == 0) {
                throw std::invalid_argument("parse_polynomial: zero letter on line " +
                                            std::to_string(lineno));
            }
            max_letter = std::max(max_letter, std::abs(l));
            letters.push_back(l);
        }
        if (!ls.eof()) {
            throw std::invalid_argument("parse_polynomial: trailing junk on line " +
                                        std::to_string(lineno));
        }
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw std::invalid_argument("parse_polynomial: non-finite coefficient on line " +
                                        std::to_string(lineno));
        }
        entries.push_back({Word::from_letters(letters), {re, im}});
    }
    const int n = rank > 0 ? rank : max_letter;
    GroupPolynomial p(n);
    for (const Entry& e : entries) p.add(e.w, e.c);
    return p;
}

}  // namespace ncvx::freegrp
