#ifndef EAWARD_ERROR_HPP
#define EAWARD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace eaward {

enum class ErrorCode {
    // encoding / primitives
    MalformedHex,
    ChecksumMismatch,
    InvalidCharacter,
    WrongLength,
    InvalidKey,
    RecoveryFailed,
    // transactions and scripts
    TruncatedData,
    TrailingBytes,
    ValueOutOfRange,
    MalformedTransaction,
    MalformedScript,
    // escrow
    PolicyInvalid,
    // metadata
    PayloadTooLong,
    BadTokenCount,
    UnknownRole,
    BadSuffixLength,
    DuplicateRole,
    // signed messages
    MalformedSignature,
    BadFragmentLength,
    // anchoring and storage
    EmptyDocument,
    NoAnchorFound,
    HashMismatch,
    NotFound,
    IntegrityFailure,
    // attestation
    NoRedeemScript,
    NoMetadata,
    MetadataUnparseable,
    LinkageFailed,
    AttestationInvalid,
    MissingArbitratorAttestation,
    NoTimeEvidence,
    // chain access
    TransportError,
    TxidMismatch,
    Rejected,
    // file formats
    InvalidDocument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace eaward

#endif
