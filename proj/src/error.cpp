#include "eaward/error.hpp"

namespace eaward {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MalformedHex: return "MalformedHex";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::InvalidCharacter: return "InvalidCharacter";
    case ErrorCode::WrongLength: return "WrongLength";
    case ErrorCode::InvalidKey: return "InvalidKey";
    case ErrorCode::RecoveryFailed: return "RecoveryFailed";
    case ErrorCode::TruncatedData: return "TruncatedData";
    case ErrorCode::TrailingBytes: return "TrailingBytes";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::MalformedTransaction: return "MalformedTransaction";
    case ErrorCode::MalformedScript: return "MalformedScript";
    case ErrorCode::PolicyInvalid: return "PolicyInvalid";
    case ErrorCode::PayloadTooLong: return "PayloadTooLong";
    case ErrorCode::BadTokenCount: return "BadTokenCount";
    case ErrorCode::UnknownRole: return "UnknownRole";
    case ErrorCode::BadSuffixLength: return "BadSuffixLength";
    case ErrorCode::DuplicateRole: return "DuplicateRole";
    case ErrorCode::MalformedSignature: return "MalformedSignature";
    case ErrorCode::BadFragmentLength: return "BadFragmentLength";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::NoAnchorFound: return "NoAnchorFound";
    case ErrorCode::HashMismatch: return "HashMismatch";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::IntegrityFailure: return "IntegrityFailure";
    case ErrorCode::NoRedeemScript: return "NoRedeemScript";
    case ErrorCode::NoMetadata: return "NoMetadata";
    case ErrorCode::MetadataUnparseable: return "MetadataUnparseable";
    case ErrorCode::LinkageFailed: return "LinkageFailed";
    case ErrorCode::AttestationInvalid: return "AttestationInvalid";
    case ErrorCode::MissingArbitratorAttestation: return "MissingArbitratorAttestation";
    case ErrorCode::NoTimeEvidence: return "NoTimeEvidence";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::TxidMismatch: return "TxidMismatch";
    case ErrorCode::Rejected: return "Rejected";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    }
    return "Unknown";
}

} // namespace eaward
