#include <ldit/ledger.hpp>

#include <ldit/csv.hpp>
#include <ldit/error.hpp>

#include <chrono>
#include <cstring>
#include <fstream>

namespace ldit {

namespace {

constexpr char kMagic[4] = {'L', 'D', 'I', 'T'};
constexpr std::size_t kFileHeaderSize = 6;
constexpr std::size_t kBlockHeaderSize = 8 + 32 + 32 + 8; // after the length field

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
    auto u = static_cast<std::make_unsigned_t<T>>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
}

template <typename T>
T get_le(const std::uint8_t* p) {
    std::make_unsigned_t<T> u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<std::make_unsigned_t<T>>(p[i]) << (8 * i);
    return static_cast<T>(u);
}

struct Parsed {
    std::vector<ScoreBlock> blocks;
    VerificationReport report;
};

Parsed parse_and_verify(std::span<const std::uint8_t> bytes) {
    Parsed r;
    auto fail = [&](std::uint64_t index, std::string message) {
        r.report.valid = false;
        r.report.first_invalid_index = index;
        r.report.message = std::move(message);
        return r;
    };
    if (bytes.empty()) {
        r.report.message = "empty ledger";
        return r;
    }
    if (bytes.size() < kFileHeaderSize || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        return fail(0, "bad file header");
    }
    if (get_le<std::uint16_t>(bytes.data() + 4) != kLedgerVersion) return fail(0, "unsupported ledger version");

    std::size_t pos = kFileHeaderSize;
    Digest prev{};
    std::int64_t prev_ts = 0;
    std::uint64_t expected = 0;
    while (pos < bytes.size()) {
        if (bytes.size() - pos < 4) return fail(expected, "truncated length field");
        const auto length = get_le<std::uint32_t>(bytes.data() + pos);
        pos += 4;
        if (length < kBlockHeaderSize || length > bytes.size() - pos) return fail(expected, "bad block length");
        const std::uint8_t* p = bytes.data() + pos;
        ScoreBlock b;
        b.index = get_le<std::uint64_t>(p);
        std::memcpy(b.prev_hash.data(), p + 8, 32);
        std::memcpy(b.payload_hash.data(), p + 40, 32);
        b.timestamp = get_le<std::int64_t>(p + 72);
        b.payload.assign(reinterpret_cast<const char*>(p + kBlockHeaderSize), length - kBlockHeaderSize);
        pos += length;

        if (b.index != expected) return fail(expected, "index out of sequence");
        if (b.prev_hash != prev) return fail(expected, "prev_hash does not match the previous block");
        if (sha256(b.payload) != b.payload_hash) return fail(expected, "payload hash mismatch");
        if (expected > 0 && b.timestamp < prev_ts) return fail(expected, "timestamp goes backwards");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(b.payload);
        } catch (const nlohmann::json::exception&) {
            return fail(expected, "payload is not JSON");
        }
        if (doc.dump() != b.payload) return fail(expected, "payload is not canonical");
        if (!doc.is_object() || doc.value("index", std::uint64_t{0} - 1) != b.index ||
            doc.value("timestamp", std::int64_t{-1}) != b.timestamp) {
            return fail(expected, "payload header fields disagree with the block header");
        }
        prev = b.block_hash();
        prev_ts = b.timestamp;
        r.blocks.push_back(std::move(b));
        ++expected;
        ++r.report.block_count;
    }
    if (r.blocks.empty()) r.report.message = "empty ledger";
    return r;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InputMissing, "cannot open ledger " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

Digest ScoreBlock::block_hash() const {
    std::vector<std::uint8_t> pre;
    pre.reserve(80);
    put_le(pre, index);
    pre.insert(pre.end(), prev_hash.begin(), prev_hash.end());
    pre.insert(pre.end(), payload_hash.begin(), payload_hash.end());
    put_le(pre, timestamp);
    return sha256(pre);
}

std::int64_t system_clock_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
}

Ledger Ledger::from_bytes(std::span<const std::uint8_t> bytes) {
    auto parsed = parse_and_verify(bytes);
    if (!parsed.report.valid) {
        throw Error(ErrorKind::CorruptChain, "ledger invalid at block " +
                                                 std::to_string(*parsed.report.first_invalid_index) + ": " +
                                                 parsed.report.message);
    }
    Ledger l;
    l.blocks_ = std::move(parsed.blocks);
    return l;
}

Ledger Ledger::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return {};
    return from_bytes(read_bytes(path));
}

std::vector<std::uint8_t> Ledger::to_bytes() const {
    std::vector<std::uint8_t> out(kMagic, kMagic + 4);
    put_le(out, kLedgerVersion);
    for (const auto& b : blocks_) {
        put_le(out, static_cast<std::uint32_t>(kBlockHeaderSize + b.payload.size()));
        put_le(out, b.index);
        out.insert(out.end(), b.prev_hash.begin(), b.prev_hash.end());
        out.insert(out.end(), b.payload_hash.begin(), b.payload_hash.end());
        put_le(out, b.timestamp);
        out.insert(out.end(), b.payload.begin(), b.payload.end());
    }
    return out;
}

void Ledger::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto bytes = to_bytes();
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error(ErrorKind::InvalidInput, "cannot write ledger " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string canonical_payload(std::uint64_t index, std::int64_t timestamp, const std::vector<ScoreCard>& cards,
                              const nlohmann::json& config_fingerprint) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : cards) list.push_back(scorecard_to_json(c));
    const nlohmann::json doc{{"index", index},
                             {"timestamp", timestamp},
                             {"config", config_fingerprint},
                             {"scorecards", list}};
    return doc.dump();
}

ScoreBlock append_block(Ledger& ledger, const std::vector<ScoreCard>& cards, const nlohmann::json& config_fingerprint,
                        const Clock& clock) {
    if (const auto report = verify_chain(ledger); !report.valid) {
        throw Error(ErrorKind::CorruptChain, "refusing to append: block " +
                                                 std::to_string(*report.first_invalid_index) + " " + report.message);
    }
    ScoreBlock b;
    b.index = ledger.blocks_.size();
    std::int64_t ts = clock();
    if (!ledger.blocks_.empty()) {
        b.prev_hash = ledger.blocks_.back().block_hash();
        ts = std::max(ts, ledger.blocks_.back().timestamp);
    }
    b.timestamp = ts;
    b.payload = canonical_payload(b.index, b.timestamp, cards, config_fingerprint);
    b.payload_hash = sha256(b.payload);
    ledger.blocks_.push_back(b);
    return b;
}

VerificationReport verify_chain(std::span<const std::uint8_t> bytes) {
    return parse_and_verify(bytes).report;
}

VerificationReport verify_chain(const Ledger& ledger) {
    return verify_chain(ledger.to_bytes());
}

VerificationReport verify_ledger_file(const std::filesystem::path& path) {
    return verify_chain(read_bytes(path));
}

std::vector<std::pair<UtcTime, ScoreCard>> read_history(const Ledger& ledger, int norad_id) {
    if (const auto report = verify_chain(ledger); !report.valid) {
        throw Error(ErrorKind::CorruptChain, "ledger invalid at block " + std::to_string(*report.first_invalid_index));
    }
    std::vector<std::pair<UtcTime, ScoreCard>> out;
    for (const auto& b : ledger.blocks()) {
        const auto doc = nlohmann::json::parse(b.payload);
        for (const auto& c : doc.at("scorecards")) {
            if (c.at("norad_id").get<int>() == norad_id) {
                out.emplace_back(UtcTime::from_unix_seconds(static_cast<double>(b.timestamp)), scorecard_from_json(c));
            }
        }
    }
    return out;
}

} // namespace ldit
