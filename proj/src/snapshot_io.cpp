#include "swat/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace swat {

namespace {

static_assert(std::endian::native == std::endian::little, "snapshot files are little-endian");

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u64(std::uint64_t v) { raw(&v, sizeof v); }
    void i64(std::int64_t v) { raw(&v, sizeof v); }
    void f64(double v) { raw(&v, sizeof v); }
    void str(std::string_view s) {
        u64(s.size());
        buf_.append(s);
    }
    void strs(const std::vector<std::string>& v) {
        u64(v.size());
        for (const auto& s : v) str(s);
    }
    void opt(const std::optional<std::string>& s) {
        u8(s ? 1 : 0);
        if (s) str(*s);
    }
    const std::string& bytes() const { return buf_; }

private:
    void raw(const void* p, std::size_t n) { buf_.append(static_cast<const char*>(p), n); }
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }
    std::uint64_t u64() { return pod<std::uint64_t>(); }
    std::int64_t i64() { return pod<std::int64_t>(); }
    double f64() { return pod<double>(); }
    std::string str() {
        auto n = u64();
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::vector<std::string> strs() {
        auto n = count();
        std::vector<std::string> v;
        v.reserve(n);
        for (std::size_t i = 0; i < n; ++i) v.push_back(str());
        return v;
    }
    std::optional<std::string> opt() {
        if (u8() == 0) return std::nullopt;
        return str();
    }
    // Element count, sanity-checked against the remaining bytes.
    std::size_t count() {
        auto n = u64();
        if (n > data_.size() - pos_) throw FormatError("snapshot file is corrupt");
        return static_cast<std::size_t>(n);
    }
    bool done() const { return pos_ == data_.size(); }

private:
    template <typename T>
    T pod() {
        need(sizeof(T));
        T v;
        std::memcpy(&v, data_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    void need(std::uint64_t n) const {
        if (n > data_.size() - pos_) throw FormatError("snapshot file is truncated");
    }
    std::string data_;
    std::size_t pos_ = 0;
};

}  // namespace

void save_snapshot(const GraphSnapshot& snapshot, const std::filesystem::path& path) {
    const CorpusRecords rec = to_records(snapshot);
    Writer w;
    for (char c : kSnapshotMagic) w.u8(static_cast<std::uint8_t>(c));
    w.i64(std::chrono::duration_cast<std::chrono::nanoseconds>(snapshot.build_timestamp().time_since_epoch()).count());

    w.u64(rec.individuals.size());
    for (const auto& [i, _] : rec.individuals) {
        w.str(i.id);
        w.str(i.name);
        w.strs(i.affiliations);
        w.opt(i.country);
        w.u64(i.profile.size());
        for (const auto& [k, v] : i.profile) {
            w.str(k);
            w.str(v);
        }
    }
    w.u64(rec.areas.size());
    for (const auto& [a, _] : rec.areas) {
        w.str(a.id);
        w.str(a.name);
        w.strs(a.aliases);
    }
    w.u64(rec.relations.size());
    for (const auto& [r, _] : rec.relations) {
        w.str(r.from);
        w.str(r.to);
        w.u8(static_cast<std::uint8_t>(r.kind));
        w.f64(r.similarity);
    }
    w.u64(rec.competence.size());
    for (const auto& [c, _] : rec.competence) {
        w.str(c.individual);
        w.str(c.area);
        w.f64(c.weight);
        w.u8(c.derived ? 1 : 0);
    }
    w.u64(rec.social.size());
    for (const auto& [s, _] : rec.social) {
        w.str(s.src);
        w.str(s.dst);
        w.str(s.dimension);
        w.f64(s.strength);
    }
    w.u64(rec.publications.size());
    for (const auto& [p, _] : rec.publications) {
        w.str(p.id);
        w.strs(p.authors);
        w.strs(p.areas);
        w.i64(p.year);
        w.opt(p.venue);
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write snapshot " + path.string());
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw IoError("write failure on snapshot " + path.string());
}

GraphSnapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on snapshot " + path.string());
    if (data.compare(0, kSnapshotMagic.size(), kSnapshotMagic) != 0)
        throw FormatError(path.string() + " is not a snapshot of this version; re-run ingest");

    Reader r(data.substr(kSnapshotMagic.size()));
    const auto stamp = std::chrono::system_clock::time_point(
        std::chrono::duration_cast<std::chrono::system_clock::duration>(std::chrono::nanoseconds(r.i64())));

    CorpusRecords rec;
    auto at = [](const char* file, std::size_t i) { return Locator{std::string("snapshot:") + file, i + 1}; };

    for (std::size_t i = 0, n = r.count(); i < n; ++i) {
        Individual x;
        x.id = r.str();
        x.name = r.str();
        x.affiliations = r.strs();
        x.country = r.opt();
        for (std::size_t k = 0, m = r.count(); k < m; ++k) {
            auto key = r.str();
            x.profile.emplace(std::move(key), r.str());
        }
        rec.individuals.push_back({std::move(x), at("individuals", i)});
    }
    for (std::size_t i = 0, n = r.count(); i < n; ++i) {
        ExpertiseArea x;
        x.id = r.str();
        x.name = r.str();
        x.aliases = r.strs();
        rec.areas.push_back({std::move(x), at("areas", i)});
    }
    for (std::size_t i = 0, n = r.count(); i < n; ++i) {
        AreaRelation x;
        x.from = r.str();
        x.to = r.str();
        auto kind = r.u8();
        if (kind > static_cast<std::uint8_t>(RelationKind::synonym)) throw FormatError("snapshot file is corrupt");
        x.kind = static_cast<RelationKind>(kind);
        x.similarity = r.f64();
        rec.relations.push_back({std::move(x), at("relations", i)});
    }
    for (std::size_t i = 0, n = r.count(); i < n; ++i) {
        CompetenceRecord x;
        x.individual = r.str();
        x.area = r.str();
        x.weight = r.f64();
        x.derived = r.u8() != 0;
        rec.competence.push_back({std::move(x), at("competence", i)});
    }
    for (std::size_t i = 0, n = r.count(); i < n; ++i) {
        SocialRecord x;
        x.src = r.str();
        x.dst = r.str();
        x.dimension = r.str();
        x.strength = r.f64();
        rec.social.push_back({std::move(x), at("social", i)});
    }
    for (std::size_t i = 0, n = r.count(); i < n; ++i) {
        PublicationRecord x;
        x.id = r.str();
        x.authors = r.strs();
        x.areas = r.strs();
        x.year = static_cast<int>(r.i64());
        x.venue = r.opt();
        rec.publications.push_back({std::move(x), at("publications", i)});
    }
    if (!r.done()) throw FormatError("snapshot file has trailing bytes");
    return build_snapshot(rec, stamp);
}

}  // namespace swat
