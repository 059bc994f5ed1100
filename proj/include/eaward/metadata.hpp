#ifndef EAWARD_METADATA_HPP
#define EAWARD_METADATA_HPP

#include "eaward/crypto.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace eaward {

/// A = arbitrator, C = claimant, R = respondent.
enum class Role { arbitrator, claimant, respondent };

inline constexpr std::array<Role, 3> all_roles{Role::arbitrator, Role::claimant, Role::respondent};

char role_letter(Role role) noexcept;
std::optional<Role> role_from_letter(char letter) noexcept;
std::string_view role_name(Role role) noexcept;

inline constexpr std::size_t suffix_length = 5;
inline constexpr std::size_t fragment_length = 28;
inline constexpr std::size_t max_payload_size = 80;

struct ParticipantTag {
    Role role = Role::arbitrator;
    std::string display_name;
    std::string suffix;

    bool operator==(const ParticipantTag&) const = default;
};

/// The on-chain award line:
///   A-<name>-<sfx> C-<name>-<sfx> R-<name>-<sfx> <seat> <signature fragment>
struct AwardMetadata {
    std::array<ParticipantTag, 3> participants; ///< indexed A, C, R
    std::string seat;
    std::string sig_fragment;

    [[nodiscard]] const ParticipantTag& participant(Role role) const noexcept
    {
        return participants[static_cast<std::size_t>(role)];
    }

    bool operator==(const AwardMetadata&) const = default;
};

/// Names and seat: ASCII alphanumerics only.
bool valid_display_token(std::string_view s) noexcept;

/// Throws InvalidCharacter, BadSuffixLength, BadFragmentLength or
/// PayloadTooLong (> 80 bytes).
Bytes encode_metadata(const AwardMetadata& meta);

/// Throws BadTokenCount, UnknownRole, BadSuffixLength, DuplicateRole,
/// BadFragmentLength or InvalidCharacter.
AwardMetadata decode_metadata(ByteView payload);

/// The signed prefix of the line: everything before " <sig_fragment>".
std::string attest_message(const AwardMetadata& meta);

} // namespace eaward

#endif
