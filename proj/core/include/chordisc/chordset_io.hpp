#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "chordisc/geometry.hpp"

namespace chordisc {

inline constexpr int kChordSetFormatVersion = 1;

class ChordSetFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// JSON document {version, body: {kind, params}, chords: [[s, t], ...]} with
// every number written as a 17-significant-digit decimal string.
std::string chordset_to_json(const ChordSet& set);

// Throws ChordSetFormatError on malformed input, unsupported version,
// degenerate or duplicate chords, or a body different from expected_body.
ChordSet chordset_from_json(const std::string& text, const std::optional<ConvexBody>& expected_body = std::nullopt);

void save_chordset(const ChordSet& set, const std::filesystem::path& path);
ChordSet load_chordset(const std::filesystem::path& path,
                       const std::optional<ConvexBody>& expected_body = std::nullopt);

// Body description alone, as used inside the chord-set document.
std::string body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const std::string& text);

}  // namespace chordisc
