#include "eaward/metadata.hpp"

#include "eaward/error.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace eaward {

char role_letter(Role role) noexcept
{
    switch (role) {
    case Role::arbitrator: return 'A';
    case Role::claimant: return 'C';
    case Role::respondent: return 'R';
    }
    return '?';
}

std::optional<Role> role_from_letter(char letter) noexcept
{
    switch (letter) {
    case 'A': return Role::arbitrator;
    case 'C': return Role::claimant;
    case 'R': return Role::respondent;
    default: return std::nullopt;
    }
}

std::string_view role_name(Role role) noexcept
{
    switch (role) {
    case Role::arbitrator: return "arbitrator";
    case Role::claimant: return "claimant";
    case Role::respondent: return "respondent";
    }
    return "unknown";
}

bool valid_display_token(std::string_view s) noexcept
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    });
}

namespace {

constexpr std::string_view base58_chars = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
constexpr std::string_view base64_chars = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/=";

void check_suffix(const std::string& suffix)
{
    if (suffix.size() != suffix_length)
        throw Error(ErrorCode::BadSuffixLength, "address suffix '" + suffix + "' is not " + std::to_string(suffix_length) + " characters");
    if (suffix.find_first_not_of(base58_chars) != std::string::npos)
        throw Error(ErrorCode::InvalidCharacter, "address suffix '" + suffix + "' is not base58");
}

void check_fragment(const std::string& fragment)
{
    if (fragment.size() != fragment_length)
        throw Error(ErrorCode::BadFragmentLength, "signature fragment must be " + std::to_string(fragment_length) + " characters");
    if (fragment.find_first_not_of(base64_chars) != std::string::npos)
        throw Error(ErrorCode::InvalidCharacter, "signature fragment is not base64");
}

std::vector<std::string_view> split(std::string_view s, char delim)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(delim, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

} // namespace

std::string attest_message(const AwardMetadata& meta)
{
    std::string line;
    for (const auto& p : meta.participants) {
        line.push_back(role_letter(p.role));
        line += '-' + p.display_name + '-' + p.suffix + ' ';
    }
    line += meta.seat;
    return line;
}

Bytes encode_metadata(const AwardMetadata& meta)
{
    for (std::size_t i = 0; i < meta.participants.size(); ++i) {
        const auto& p = meta.participants[i];
        if (p.role != all_roles[i])
            throw Error(ErrorCode::DuplicateRole, "participants must be ordered A, C, R");
        if (!valid_display_token(p.display_name))
            throw Error(ErrorCode::InvalidCharacter, "display name '" + p.display_name + "' must be non-empty ASCII alphanumerics");
        check_suffix(p.suffix);
    }
    if (!valid_display_token(meta.seat))
        throw Error(ErrorCode::InvalidCharacter, "seat '" + meta.seat + "' must be a single alphanumeric token");
    check_fragment(meta.sig_fragment);

    auto line = attest_message(meta) + ' ' + meta.sig_fragment;
    if (line.size() > max_payload_size)
        throw Error(ErrorCode::PayloadTooLong, "encoded metadata is " + std::to_string(line.size()) + " bytes, limit is " + std::to_string(max_payload_size));
    return Bytes(line.begin(), line.end());
}

AwardMetadata decode_metadata(ByteView payload)
{
    if (payload.size() > max_payload_size)
        throw Error(ErrorCode::PayloadTooLong, "payload is " + std::to_string(payload.size()) + " bytes");
    std::string text(payload.begin(), payload.end());
    if (std::any_of(text.begin(), text.end(), [](char c) { return static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) > 0x7e; }))
        throw Error(ErrorCode::InvalidCharacter, "payload is not printable ASCII");

    auto tokens = split(text, ' ');
    if (tokens.size() != 5)
        throw Error(ErrorCode::BadTokenCount, "expected 5 space-separated tokens, got " + std::to_string(tokens.size()));

    AwardMetadata meta;
    std::array<bool, 3> seen{};
    for (std::size_t i = 0; i < 3; ++i) {
        auto parts = split(tokens[i], '-');
        if (parts.size() != 3)
            throw Error(ErrorCode::BadTokenCount, "participant tag '" + std::string(tokens[i]) + "' must be <role>-<name>-<suffix>");
        if (parts[0].size() != 1 || !role_from_letter(parts[0][0]))
            throw Error(ErrorCode::UnknownRole, "unknown role '" + std::string(parts[0]) + "'");
        auto role = *role_from_letter(parts[0][0]);
        auto idx = static_cast<std::size_t>(role);
        if (seen[idx])
            throw Error(ErrorCode::DuplicateRole, std::string("role ") + role_letter(role) + " appears twice");
        seen[idx] = true;

        ParticipantTag tag{role, std::string(parts[1]), std::string(parts[2])};
        if (!valid_display_token(tag.display_name))
            throw Error(ErrorCode::InvalidCharacter, "display name '" + tag.display_name + "' must be non-empty ASCII alphanumerics");
        check_suffix(tag.suffix);
        meta.participants[idx] = std::move(tag);
    }
    meta.seat = std::string(tokens[3]);
    if (!valid_display_token(meta.seat))
        throw Error(ErrorCode::InvalidCharacter, "seat '" + meta.seat + "' must be a single alphanumeric token");
    meta.sig_fragment = std::string(tokens[4]);
    check_fragment(meta.sig_fragment);

    // the wire order is part of the format
    for (std::size_t i = 0; i < 3; ++i)
        if (tokens[i][0] != role_letter(all_roles[i]))
            throw Error(ErrorCode::UnknownRole, "participant tags must appear in A, C, R order");
    return meta;
}

} // namespace eaward
