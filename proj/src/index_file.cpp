#include "meshrel/workspace.hpp"

#include "meshrel/error.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace meshrel {

static_assert(std::endian::native == std::endian::little, "index files are written little-endian");

namespace {

class Writer {
public:
    template <typename T>
    void put(T v)
    {
        static_assert(std::is_trivially_copyable_v<T>);
        const auto* p = reinterpret_cast<const char*>(&v);
        buf_.insert(buf_.end(), p, p + sizeof(T));
    }
    void str(const std::string& s)
    {
        put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
        buf_.insert(buf_.end(), s.begin(), s.end());
    }
    const std::string& bytes() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    template <typename T>
    T get()
    {
        need(sizeof(T));
        T v;
        std::memcpy(&v, data_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    std::string str()
    {
        const auto n = get<std::uint32_t>();
        need(n);
        std::string s(data_.substr(pos_, n));
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) const
    {
        if (data_.size() - pos_ < n)
            throw InputError("index file payload is truncated");
    }
    std::string_view data_;
    std::size_t pos_ = 0;
};

std::uint32_t checksum(const std::string& payload)
{
    return static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size())));
}

} // namespace

void save_index(std::ostream& out, const Workspace& ws)
{
    Writer w;
    const auto& ic = ws.ic();
    w.put<double>(ic.options.log_base);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(ic.options.universe));
    w.put<std::uint8_t>(ws.options().graph.virtual_root ? 1 : 0);

    const auto& vocab = ws.vocab();
    w.put<std::uint32_t>(static_cast<std::uint32_t>(vocab.size()));
    for (const auto& term : vocab.terms()) {
        w.str(term.id);
        w.str(term.name);
        w.put<std::uint32_t>(static_cast<std::uint32_t>(term.tree_numbers.size()));
        for (const auto& tn : term.tree_numbers)
            w.str(tn.str());
    }

    const auto& corpus = ws.corpus();
    w.put<std::uint32_t>(static_cast<std::uint32_t>(corpus.size()));
    for (const auto& rec : corpus.records()) {
        w.str(rec.doc_id);
        w.put<std::uint32_t>(static_cast<std::uint32_t>(rec.annotations.size()));
        for (const auto& a : rec.annotations) {
            w.put<std::uint32_t>(a.term);
            w.put<std::uint8_t>(a.major ? 1 : 0);
            w.put<std::uint32_t>(static_cast<std::uint32_t>(a.qualifiers.size()));
            for (const auto& q : a.qualifiers)
                w.str(q);
        }
    }

    for (auto f : ic.frequency)
        w.put<std::uint64_t>(f);
    for (auto m : ic.subtree_mass)
        w.put<double>(m);
    for (auto v : ic.ic)
        w.put<double>(v);
    w.put<double>(ic.denominator);

    const auto& payload = w.bytes();
    out.write(kIndexMagic, sizeof(kIndexMagic));
    const std::uint32_t version = kIndexVersion;
    const std::uint64_t length = payload.size();
    const std::uint32_t crc = checksum(payload);
    out.write(reinterpret_cast<const char*>(&version), sizeof(version));
    out.write(reinterpret_cast<const char*>(&length), sizeof(length));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.write(reinterpret_cast<const char*>(&crc), sizeof(crc));
    if (!out)
        throw InputError("failed to write index");
}

void save_index(const std::string& path, const Workspace& ws)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot open '" + path + "' for writing");
    save_index(out, ws);
}

std::unique_ptr<Workspace> load_index(std::istream& in, std::size_t cache_rows)
{
    char magic[sizeof(kIndexMagic)] = {};
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kIndexMagic, sizeof(magic)) != 0)
        throw InputError("not a meshrel index file (bad magic)");
    std::uint32_t version = 0;
    std::uint64_t length = 0;
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    if (!in)
        throw InputError("index file header is truncated");
    if (version != kIndexVersion)
        throw InputError("index format version " + std::to_string(version) + " is not supported (expected " +
                         std::to_string(kIndexVersion) + ")");
    in.read(reinterpret_cast<char*>(&length), sizeof(length));
    if (!in || length > (std::uint64_t{1} << 40))
        throw InputError("index file header is truncated");
    std::string payload(length, '\0');
    in.read(payload.data(), static_cast<std::streamsize>(length));
    std::uint32_t crc = 0;
    in.read(reinterpret_cast<char*>(&crc), sizeof(crc));
    if (!in)
        throw InputError("index file is truncated");
    if (in.peek() != std::char_traits<char>::eof())
        throw InputError("index file has trailing bytes");
    if (crc != checksum(payload))
        throw InputError("index file checksum mismatch");

    Reader r(payload);
    Workspace::Options options;
    options.cache_rows = cache_rows;
    options.ic.log_base = r.get<double>();
    const auto universe = r.get<std::uint8_t>();
    if (universe > 1)
        throw InputError("index file has an unknown IC universe");
    options.ic.universe = static_cast<IcUniverse>(universe);
    options.graph.virtual_root = r.get<std::uint8_t>() != 0;

    std::vector<MeshTerm> terms(r.get<std::uint32_t>());
    for (auto& term : terms) {
        term.id = r.str();
        term.name = r.str();
        term.tree_numbers.resize(r.get<std::uint32_t>());
        for (auto& tn : term.tree_numbers)
            tn = TreeNumber::parse(r.str());
    }
    auto vocab = VocabularyIndex::build(std::move(terms));

    Corpus corpus;
    const auto n_docs = r.get<std::uint32_t>();
    for (std::uint32_t d = 0; d < n_docs; ++d) {
        PublicationRecord rec;
        rec.doc_id = r.str();
        rec.annotations.resize(r.get<std::uint32_t>());
        for (auto& a : rec.annotations) {
            a.term = r.get<std::uint32_t>();
            if (a.term >= vocab.size())
                throw InputError("index file references a term outside its vocabulary");
            a.major = r.get<std::uint8_t>() != 0;
            a.qualifiers.resize(r.get<std::uint32_t>());
            for (auto& q : a.qualifiers)
                q = r.str();
        }
        corpus.add(std::move(rec));
    }

    IcTable ic;
    ic.options = options.ic;
    ic.frequency.resize(vocab.size());
    ic.subtree_mass.resize(vocab.size());
    ic.ic.resize(vocab.size());
    for (auto& f : ic.frequency)
        f = r.get<std::uint64_t>();
    for (auto& m : ic.subtree_mass)
        m = r.get<double>();
    for (auto& v : ic.ic)
        v = r.get<double>();
    ic.denominator = r.get<double>();
    if (!r.done())
        throw InputError("index file has trailing payload bytes");

    return std::make_unique<Workspace>(std::move(vocab), std::move(corpus), std::move(ic), options);
}

std::unique_ptr<Workspace> load_index(const std::string& path, std::size_t cache_rows)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open index '" + path + "'");
    return load_index(in, cache_rows);
}

} // namespace meshrel
