#pragma once

#include <ldit/digest.hpp>
#include <ldit/scoring.hpp>
#include <ldit/time.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ldit {

// File layout, little-endian integers:
//
//   "LDIT" | u16 version (1)
//   repeated:
//     u32 length            bytes that follow in this block
//     u64 index
//     32B prev_hash         zero for the genesis block
//     32B payload_hash      SHA-256(payload)
//     i64 timestamp         unix seconds
//     payload               canonical JSON, keys sorted, no whitespace
//
// block_hash = SHA-256(index u64 LE | prev_hash | payload_hash | timestamp i64 LE).
// The payload repeats its own index and timestamp so every header byte is
// covered by some hash even in the last block.
inline constexpr std::uint16_t kLedgerVersion = 1;

struct ScoreBlock {
    std::uint64_t index = 0;
    Digest prev_hash{};
    Digest payload_hash{};
    std::int64_t timestamp = 0;
    std::string payload;

    Digest block_hash() const;
};

using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_seconds();

struct VerificationReport {
    bool valid = true;
    std::size_t block_count = 0;            // blocks that verified
    std::optional<std::uint64_t> first_invalid_index;
    std::string message;
};

class Ledger {
public:
    Ledger() = default;

    // Strict: throws CorruptChain unless the bytes verify.
    static Ledger from_bytes(std::span<const std::uint8_t> bytes);
    // Missing or empty files load as an empty ledger.
    static Ledger load(const std::filesystem::path& path);

    std::vector<std::uint8_t> to_bytes() const;
    // Atomic replace through a temporary file.
    void save(const std::filesystem::path& path) const;

    const std::vector<ScoreBlock>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    bool empty() const noexcept { return blocks_.empty(); }

private:
    friend ScoreBlock append_block(Ledger&, const std::vector<ScoreCard>&, const nlohmann::json&, const Clock&);
    std::vector<ScoreBlock> blocks_;
};

// Canonical payload bytes for a batch of cards.
std::string canonical_payload(std::uint64_t index, std::int64_t timestamp, const std::vector<ScoreCard>& cards,
                              const nlohmann::json& config_fingerprint);

// Throws CorruptChain when the ledger does not verify.
ScoreBlock append_block(Ledger& ledger, const std::vector<ScoreCard>& cards, const nlohmann::json& config_fingerprint,
                        const Clock& clock = system_clock_seconds);

VerificationReport verify_chain(std::span<const std::uint8_t> bytes);
VerificationReport verify_chain(const Ledger& ledger);
VerificationReport verify_ledger_file(const std::filesystem::path& path);

// Chronological records for one object. Throws CorruptChain.
std::vector<std::pair<UtcTime, ScoreCard>> read_history(const Ledger& ledger, int norad_id);

} // namespace ldit
