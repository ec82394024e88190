#include "meshrel/vocabulary.hpp"

#include "meshrel/error.hpp"
#include "meshrel/text.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

namespace meshrel {

namespace {

bool is_alnum_token(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) != 0;
    });
}

void sort_unique(std::vector<TermIdx>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

TreeNumber TreeNumber::parse(std::string_view text)
{
    TreeNumber tn;
    for (auto seg : text::split(text, '.')) {
        if (!is_alnum_token(seg))
            throw InputError("malformed tree number '" + std::string(text) + "'");
        tn.segments_.emplace_back(seg);
    }
    return tn;
}

std::optional<TreeNumber> TreeNumber::parent() const
{
    if (segments_.size() <= 1)
        return std::nullopt;
    TreeNumber p;
    p.segments_.assign(segments_.begin(), segments_.end() - 1);
    return p;
}

std::string TreeNumber::str() const
{
    std::string out;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (i != 0)
            out += '.';
        out += segments_[i];
    }
    return out;
}

VocabularyIndex VocabularyIndex::build(std::vector<MeshTerm> terms)
{
    VocabularyIndex v;
    v.terms_ = std::move(terms);
    const auto n = v.terms_.size();

    std::unordered_map<std::string, TermIdx> owner;
    for (TermIdx t = 0; t < n; ++t) {
        const auto& term = v.terms_[t];
        if (term.id.empty())
            throw InputError("term with empty id");
        if (!v.by_id_.emplace(term.id, t).second)
            throw InputError("duplicate term id '" + term.id + "'");
        if (term.tree_numbers.empty())
            throw InputError("term '" + term.id + "' has no tree numbers");
        for (const auto& tn : term.tree_numbers) {
            auto [it, inserted] = owner.emplace(tn.str(), t);
            if (!inserted) {
                if (it->second == t)
                    throw InputError("term '" + term.id + "' lists tree number " + tn.str() + " twice");
                throw InputError("tree number " + tn.str() + " shared by terms '" +
                                 v.terms_[it->second].id + "' and '" + term.id + "'");
            }
        }
    }

    v.parents_.assign(n, {});
    v.children_.assign(n, {});
    for (TermIdx t = 0; t < n; ++t) {
        const auto& term = v.terms_[t];
        bool root = false;
        for (const auto& tn : term.tree_numbers) {
            const auto parent = tn.parent();
            if (!parent) {
                root = true;
                continue;
            }
            const auto it = owner.find(parent->str());
            if (it == owner.end())
                throw InputError("tree number " + tn.str() + " of term '" + term.id +
                                 "' has no parent term (" + parent->str() + " is not assigned)");
            if (it->second == t)
                throw InputError("term '" + term.id + "' is its own parent via " + tn.str());
            v.parents_[t].push_back(it->second);
            v.children_[it->second].push_back(t);
        }
        if (root)
            v.roots_.push_back(t);
    }
    for (TermIdx t = 0; t < n; ++t) {
        sort_unique(v.parents_[t]);
        sort_unique(v.children_[t]);
    }

    // Kahn's algorithm from the leaves upwards gives an order in which every
    // term follows all of its children; leftovers mean a cycle.
    std::vector<std::size_t> pending(n);
    std::vector<TermIdx> order;
    order.reserve(n);
    for (TermIdx t = 0; t < n; ++t) {
        pending[t] = v.children_[t].size();
        if (pending[t] == 0)
            order.push_back(t);
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (TermIdx p : v.parents_[order[head]]) {
            if (--pending[p] == 0)
                order.push_back(p);
        }
    }
    if (order.size() != n)
        throw InputError("tree numbers induce a cycle in the term hierarchy");

    v.descendants_.assign(n, {});
    for (TermIdx t : order) {
        auto& desc = v.descendants_[t];
        for (TermIdx c : v.children_[t]) {
            desc.push_back(c);
            desc.insert(desc.end(), v.descendants_[c].begin(), v.descendants_[c].end());
        }
        sort_unique(desc);
    }
    return v;
}

std::optional<TermIdx> VocabularyIndex::find(std::string_view id) const
{
    const auto it = by_id_.find(std::string(id));
    if (it == by_id_.end())
        return std::nullopt;
    return it->second;
}

TermIdx VocabularyIndex::index_of(std::string_view id) const
{
    if (auto t = find(id))
        return *t;
    throw InputError("unknown term id '" + std::string(id) + "'");
}

VocabularyIndex parse_vocabulary(std::istream& in)
{
    std::vector<MeshTerm> terms;
    std::unordered_map<std::string, std::size_t> id_line;
    std::unordered_map<std::string, std::size_t> tree_line;

    text::for_each_record(in, [&](std::size_t line, std::string_view rec) {
        const auto fields = text::split(rec, '\t');
        if (fields.size() != 3)
            throw ParseError(line, "expected 3 tab-separated fields, found " +
                                       std::to_string(fields.size()));
        MeshTerm term;
        term.id = std::string(fields[0]);
        term.name = std::string(fields[1]);
        if (term.id.empty())
            throw ParseError(line, "empty term id");
        if (auto [it, ok] = id_line.emplace(term.id, line); !ok)
            throw ParseError(line, "duplicate term id '" + term.id + "' (first defined on line " +
                                       std::to_string(it->second) + ")");
        if (fields[2].empty())
            throw ParseError(line, "term '" + term.id + "' has no tree numbers");
        for (auto tn_text : text::split(fields[2], ';')) {
            TreeNumber tn;
            try {
                tn = TreeNumber::parse(tn_text);
            } catch (const InputError& e) {
                throw ParseError(line, e.what());
            }
            if (auto [it, ok] = tree_line.emplace(tn.str(), line); !ok)
                throw ParseError(line, "duplicate tree number " + tn.str() +
                                           " (first used on line " + std::to_string(it->second) + ")");
            term.tree_numbers.push_back(std::move(tn));
        }
        terms.push_back(std::move(term));
    });

    return VocabularyIndex::build(std::move(terms));
}

void write_vocabulary(std::ostream& out, const VocabularyIndex& vocab)
{
    for (const auto& term : vocab.terms()) {
        out << term.id << '\t' << term.name << '\t';
        for (std::size_t i = 0; i < term.tree_numbers.size(); ++i) {
            if (i != 0)
                out << ';';
            out << term.tree_numbers[i].str();
        }
        out << '\n';
    }
}

std::vector<TermIdx> descendants_of(const VocabularyIndex& vocab, std::string_view term_id)
{
    const auto d = vocab.descendants(vocab.index_of(term_id));
    return {d.begin(), d.end()};
}

} // namespace meshrel
