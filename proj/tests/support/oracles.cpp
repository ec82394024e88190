#include "oracles.hpp"

#include <cmath>
#include <limits>

namespace oracle {

std::set<TermIdx> descendants(const meshrel::VocabularyIndex& vocab, TermIdx t)
{
    std::set<TermIdx> out;
    for (TermIdx c : vocab.children(t))
        out.insert(c);
    for (;;) {
        const auto before = out.size();
        for (TermIdx d : std::set<TermIdx>(out)) {
            for (TermIdx c : vocab.children(d))
                out.insert(c);
        }
        if (out.size() == before)
            return out;
    }
}

std::vector<double> information_content(const meshrel::VocabularyIndex& vocab, const meshrel::Corpus& corpus,
                                        const meshrel::IcOptions& options)
{
    const auto n = vocab.size();
    std::vector<double> freq(n, 0.0);
    for (const auto& rec : corpus.records()) {
        std::set<TermIdx> seen;
        for (const auto& a : rec.annotations)
            seen.insert(a.term);
        for (TermIdx t : seen)
            freq[t] += 1.0;
    }
    std::vector<double> raw(n, 0.0);
    for (TermIdx t = 0; t < n; ++t) {
        raw[t] = freq[t];
        for (TermIdx d : descendants(vocab, t))
            raw[t] += freq[d];
    }
    double z = 0.0;
    for (TermIdx t = 0; t < n; ++t) {
        if (options.universe == meshrel::IcUniverse::All || freq[t] > 0)
            z += raw[t];
    }
    if (z == 0.0)
        z = 1.0;
    std::vector<double> ic(n);
    for (TermIdx t = 0; t < n; ++t) {
        const double mass = std::max(raw[t], 1.0);
        ic[t] = std::max(0.0, -std::log(mass / z) / std::log(options.log_base));
    }
    return ic;
}

std::vector<std::vector<double>> all_pairs(const meshrel::VocabularyIndex& vocab, const std::vector<double>* ic,
                                           bool virtual_root)
{
    const auto n = vocab.size();
    const auto v = n + (virtual_root ? 1 : 0);
    struct E {
        std::size_t a, b;
        double w;
    };
    auto ic_of = [&](std::size_t x) { return x < n ? (*ic)[x] : 0.0; };
    std::vector<E> edges;
    for (TermIdx c = 0; c < n; ++c) {
        for (TermIdx p : vocab.parents(c))
            edges.push_back({p, c, ic ? std::fabs(ic_of(p) - ic_of(c)) : 1.0});
    }
    if (virtual_root) {
        for (TermIdx r : vocab.roots())
            edges.push_back({n, r, ic ? ic_of(r) : 1.0});
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(v, std::vector<double>(v, inf));
    for (std::size_t s = 0; s < v; ++s) {
        d[s][s] = 0.0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : edges) {
                if (d[s][e.a] + e.w < d[s][e.b]) {
                    d[s][e.b] = d[s][e.a] + e.w;
                    changed = true;
                }
                if (d[s][e.b] + e.w < d[s][e.a]) {
                    d[s][e.a] = d[s][e.b] + e.w;
                    changed = true;
                }
            }
        }
    }
    return d;
}

double cliffs_delta(const std::vector<double>& x, const std::vector<double>& y)
{
    long long sum = 0;
    for (double xi : x) {
        for (double yj : y)
            sum += (xi > yj ? 1 : 0) - (xi < yj ? 1 : 0);
    }
    return static_cast<double>(sum) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

double eq5(const std::vector<TermIdx>& a, const std::vector<TermIdx>& b,
           const std::function<double(TermIdx, TermIdx)>& dist)
{
    double total = 0.0;
    for (TermIdx i : a) {
        double best = std::numeric_limits<double>::infinity();
        for (TermIdx j : b)
            best = std::min(best, dist(i, j));
        total += best;
    }
    for (TermIdx j : b) {
        double best = std::numeric_limits<double>::infinity();
        for (TermIdx i : a)
            best = std::min(best, dist(j, i));
        total += best;
    }
    return total / static_cast<double>(a.size() + b.size());
}

double binary_cosine(const meshrel::PublicationRecord& a, const meshrel::PublicationRecord& b,
                     std::size_t vocab_size)
{
    std::vector<double> va(vocab_size, 0.0);
    std::vector<double> vb(vocab_size, 0.0);
    for (const auto& x : a.annotations)
        va[x.term] = 1.0;
    for (const auto& x : b.annotations)
        vb[x.term] = 1.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < vocab_size; ++i) {
        dot += va[i] * vb[i];
        na += va[i] * va[i];
        nb += vb[i] * vb[i];
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<TermIdx> term_set(const meshrel::PublicationRecord& p, bool major_only)
{
    std::vector<TermIdx> out;
    for (const auto& a : p.annotations) {
        if (!major_only || a.major)
            out.push_back(a.term);
    }
    return out;
}

} // namespace oracle
