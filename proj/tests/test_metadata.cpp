#include "support.hpp"
#include "vectors.hpp"

#include <eaward/metadata.hpp>

using namespace eaward;

namespace {

AwardMetadata worked_metadata()
{
    AwardMetadata m;
    m.participants = {ParticipantTag{Role::arbitrator, "JohnSmith", "KkjJX"},
        ParticipantTag{Role::claimant, "Acme", "fZN8L"}, ParticipantTag{Role::respondent, "Baker", "NBSvH"}};
    m.seat = "London";
    m.sig_fragment = std::string(vectors::fragment);
    return m;
}

Bytes text_bytes(std::string_view s)
{
    return Bytes(s.begin(), s.end());
}

AwardMetadata random_metadata()
{
    AwardMetadata m;
    for (auto r : all_roles)
        m.participants[static_cast<std::size_t>(r)] = {r, support::random_string(support::uniform(1, 5), support::alnum),
            support::random_string(suffix_length, support::base58_alphabet)};
    m.seat = support::random_string(support::uniform(1, 6), support::alnum);
    m.sig_fragment = support::random_string(fragment_length, support::base64_alphabet);
    return m;
}

} // namespace

TEST(Metadata, WorkedExampleEncoding)
{
    auto bytes = encode_metadata(worked_metadata());
    EXPECT_EQ(to_hex(bytes), vectors::payload_hex);
    EXPECT_EQ(bytes.size(), max_payload_size);
    EXPECT_EQ(attest_message(worked_metadata()), vectors::attest_message);
}

TEST(Metadata, WorkedExampleDecoding)
{
    auto m = decode_metadata(from_hex(vectors::payload_hex));
    EXPECT_EQ(m, worked_metadata());
    EXPECT_EQ(m.participant(Role::claimant).display_name, "Acme");
}

TEST(Metadata, RoundTripProperty)
{
    for (int i = 0; i < support::property_cases; ++i) {
        auto m = random_metadata();
        auto bytes = encode_metadata(m);
        ASSERT_LE(bytes.size(), max_payload_size);
        ASSERT_EQ(decode_metadata(bytes), m);
    }
}

TEST(Metadata, OversizeRejectedProperty)
{
    for (int i = 0; i < support::property_cases; ++i) {
        auto m = random_metadata();
        m.seat = support::random_string(support::uniform(40, 60), support::alnum);
        EXPECT_EAWARD_ERROR(encode_metadata(m), ErrorCode::PayloadTooLong);
    }
    EXPECT_EAWARD_ERROR(decode_metadata(Bytes(81, 'A')), ErrorCode::PayloadTooLong);
}

TEST(Metadata, EncodeRejectsBadFields)
{
    auto m = worked_metadata();
    m.participants[0].display_name = "John Smith";
    EXPECT_EAWARD_ERROR(encode_metadata(m), ErrorCode::InvalidCharacter);
    m = worked_metadata();
    m.participants[1].suffix = "fZN8";
    EXPECT_EAWARD_ERROR(encode_metadata(m), ErrorCode::BadSuffixLength);
    m = worked_metadata();
    m.sig_fragment.pop_back();
    EXPECT_EAWARD_ERROR(encode_metadata(m), ErrorCode::BadFragmentLength);
    m = worked_metadata();
    std::swap(m.participants[1].role, m.participants[2].role);
    EXPECT_EAWARD_ERROR(encode_metadata(m), ErrorCode::DuplicateRole);
}

TEST(Metadata, DecodeRejectsMalformed)
{
    EXPECT_EAWARD_ERROR(decode_metadata(text_bytes("A-John-KkjJX C-Acme-fZN8L R-Baker-NBSvH London")),
        ErrorCode::BadTokenCount);
    EXPECT_EAWARD_ERROR(
        decode_metadata(text_bytes("X-John-KkjJX C-Acme-fZN8L R-Baker-NBSvH London Cfa7jahDTDVjZwKUpk7w1ypxg8s=")),
        ErrorCode::UnknownRole);
    EXPECT_EAWARD_ERROR(
        decode_metadata(text_bytes("A-John-KkjJX A-Acme-fZN8L R-Baker-NBSvH London Cfa7jahDTDVjZwKUpk7w1ypxg8s=")),
        ErrorCode::DuplicateRole);
    EXPECT_EAWARD_ERROR(
        decode_metadata(text_bytes("A-John-KkjJ C-Acme-fZN8L R-Baker-NBSvH London Cfa7jahDTDVjZwKUpk7w1ypxg8s=")),
        ErrorCode::BadSuffixLength);
    EXPECT_EAWARD_ERROR(decode_metadata(text_bytes("A-John-KkjJX C-Acme-fZN8L R-Baker-NBSvH London Cfa7")),
        ErrorCode::BadFragmentLength);
    EXPECT_EAWARD_ERROR(
        decode_metadata(text_bytes("A-JohnKkjJX C-Acme-fZN8L R-Baker-NBSvH London Cfa7jahDTDVjZwKUpk7w1ypxg8s=")),
        ErrorCode::BadTokenCount);
    auto bytes = from_hex(vectors::payload_hex);
    bytes[3] = 0x07;
    EXPECT_EAWARD_ERROR(decode_metadata(bytes), ErrorCode::InvalidCharacter);
}

TEST(Metadata, RoleLetters)
{
    for (auto r : all_roles) EXPECT_EQ(role_from_letter(role_letter(r)), r);
    EXPECT_FALSE(role_from_letter('Z'));
}
