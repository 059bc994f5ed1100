#define OPENSSL_SUPPRESS_DEPRECATED // RIPEMD160(): the EVP variant needs the legacy provider

#include "eaward/crypto.hpp"

#include "eaward/error.hpp"

#include <openssl/bn.h>
#include <openssl/crypto.h>
#include <openssl/ec.h>
#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>
#include <openssl/ripemd.h>

#include <algorithm>
#include <cstring>
#include <memory>

namespace eaward {

namespace {

constexpr char hex_digits[] = "0123456789abcdef";

int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr std::string_view base58_alphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

int base58_value(char c) noexcept
{
    auto pos = base58_alphabet.find(c);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

} // namespace

std::string to_hex(ByteView data)
{
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(hex_digits[b >> 4]);
        out.push_back(hex_digits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        throw Error(ErrorCode::MalformedHex, "odd number of hex digits");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw Error(ErrorCode::MalformedHex, "invalid hex digit at offset " + std::to_string(hi < 0 ? 2 * i : 2 * i + 1));
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

Digest256 Digest256::from_bytes(ByteView data)
{
    if (data.size() != 32)
        throw Error(ErrorCode::WrongLength, "expected 32 bytes, got " + std::to_string(data.size()));
    Digest256 d;
    std::copy(data.begin(), data.end(), d.bytes.begin());
    return d;
}

Digest256 Digest256::from_hex(std::string_view hex)
{
    return from_bytes(eaward::from_hex(hex));
}

Digest160 Digest160::from_bytes(ByteView data)
{
    if (data.size() != 20)
        throw Error(ErrorCode::WrongLength, "expected 20 bytes, got " + std::to_string(data.size()));
    Digest160 d;
    std::copy(data.begin(), data.end(), d.bytes.begin());
    return d;
}

Digest256 sha256(ByteView data)
{
    Digest256 d;
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32)
        throw std::runtime_error("EVP_Digest(sha256) failed");
    return d;
}

Digest256 hash256(ByteView data)
{
    return sha256(sha256(data).view());
}

Digest160 hash160(ByteView data)
{
    auto inner = sha256(data);
    Digest160 d;
    RIPEMD160(inner.bytes.data(), inner.bytes.size(), d.bytes.data());
    return d;
}

// ---------------------------------------------------------------------------
// base58 / base58check

std::string base58_encode(ByteView data)
{
    std::size_t zeros = 0;
    while (zeros < data.size() && data[zeros] == 0)
        ++zeros;

    // log(256) / log(58) ~ 1.37
    std::vector<std::uint8_t> digits((data.size() - zeros) * 138 / 100 + 1);
    std::size_t length = 0;
    for (std::size_t i = zeros; i < data.size(); ++i) {
        int carry = data[i];
        std::size_t j = 0;
        for (auto it = digits.rbegin(); (carry != 0 || j < length) && it != digits.rend(); ++it, ++j) {
            carry += 256 * (*it);
            *it = static_cast<std::uint8_t>(carry % 58);
            carry /= 58;
        }
        length = j;
    }
    auto it = digits.begin() + static_cast<std::ptrdiff_t>(digits.size() - length);
    while (it != digits.end() && *it == 0)
        ++it;

    std::string out(zeros, '1');
    for (; it != digits.end(); ++it)
        out.push_back(base58_alphabet[*it]);
    return out;
}

Bytes base58_decode(std::string_view text)
{
    std::size_t ones = 0;
    while (ones < text.size() && text[ones] == '1')
        ++ones;

    // log(58) / log(256) ~ 0.733
    std::vector<std::uint8_t> b256((text.size() - ones) * 733 / 1000 + 1);
    std::size_t length = 0;
    for (std::size_t i = ones; i < text.size(); ++i) {
        int carry = base58_value(text[i]);
        if (carry < 0)
            throw Error(ErrorCode::InvalidCharacter, std::string("'") + text[i] + "' is not in the base58 alphabet");
        std::size_t j = 0;
        for (auto it = b256.rbegin(); (carry != 0 || j < length) && it != b256.rend(); ++it, ++j) {
            carry += 58 * (*it);
            *it = static_cast<std::uint8_t>(carry % 256);
            carry /= 256;
        }
        length = j;
    }
    auto it = b256.begin() + static_cast<std::ptrdiff_t>(b256.size() - length);
    while (it != b256.end() && *it == 0)
        ++it;

    Bytes out(ones, 0);
    out.insert(out.end(), it, b256.end());
    return out;
}

std::string base58check_encode_raw(ByteView data)
{
    Bytes buf(data.begin(), data.end());
    auto check = hash256(data);
    buf.insert(buf.end(), check.bytes.begin(), check.bytes.begin() + 4);
    return base58_encode(buf);
}

Bytes base58check_decode_raw(std::string_view text)
{
    auto raw = base58_decode(text);
    if (raw.size() < 4)
        throw Error(ErrorCode::WrongLength, "base58check text too short");
    ByteView body(raw.data(), raw.size() - 4);
    auto check = hash256(body);
    if (!std::equal(check.bytes.begin(), check.bytes.begin() + 4, raw.end() - 4))
        throw Error(ErrorCode::ChecksumMismatch, "base58check checksum does not match");
    return {body.begin(), body.end()};
}

std::string base58check_encode(std::uint8_t version, const Digest160& payload)
{
    Bytes buf;
    buf.reserve(21);
    buf.push_back(version);
    buf.insert(buf.end(), payload.bytes.begin(), payload.bytes.end());
    return base58check_encode_raw(buf);
}

std::pair<std::uint8_t, Digest160> base58check_decode(std::string_view text)
{
    auto body = base58check_decode_raw(text);
    if (body.size() != 21)
        throw Error(ErrorCode::WrongLength, "expected version byte and 20-byte payload, got " + std::to_string(body.size()) + " bytes");
    return {body[0], Digest160::from_bytes(ByteView(body).subspan(1))};
}

// ---------------------------------------------------------------------------
// base64

std::string base64_encode(ByteView data)
{
    std::string out(4 * ((data.size() + 2) / 3), '\0');
    int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(), static_cast<int>(data.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

Bytes base64_decode(std::string_view text)
{
    if (text.size() % 4 != 0)
        throw Error(ErrorCode::WrongLength, "base64 length is not a multiple of 4");
    std::size_t pad = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        bool alpha = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '+' || c == '/';
        if (c == '=' && i + 2 >= text.size()) {
            ++pad;
            continue;
        }
        if (!alpha || pad > 0)
            throw Error(ErrorCode::InvalidCharacter, "invalid base64 character at offset " + std::to_string(i));
    }
    Bytes out(text.size() / 4 * 3);
    int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
    if (n < 0)
        throw Error(ErrorCode::InvalidCharacter, "base64 decode failed");
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

// ---------------------------------------------------------------------------
// secp256k1

namespace {

struct BnDeleter {
    void operator()(BIGNUM* p) const noexcept { BN_clear_free(p); }
};
struct CtxDeleter {
    void operator()(BN_CTX* p) const noexcept { BN_CTX_free(p); }
};
struct PointDeleter {
    void operator()(EC_POINT* p) const noexcept { EC_POINT_clear_free(p); }
};
using Bn = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtx = std::unique_ptr<BN_CTX, CtxDeleter>;
using Point = std::unique_ptr<EC_POINT, PointDeleter>;

[[noreturn]] void openssl_failure(const char* what)
{
    ERR_clear_error();
    throw std::runtime_error(std::string("OpenSSL failure: ") + what);
}

Bn new_bn()
{
    Bn b(BN_new());
    if (!b) openssl_failure("BN_new");
    return b;
}

Bn bn_from(ByteView bytes)
{
    Bn b(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
    if (!b) openssl_failure("BN_bin2bn");
    return b;
}

BnCtx new_ctx()
{
    BnCtx c(BN_CTX_new());
    if (!c) openssl_failure("BN_CTX_new");
    return c;
}

class Curve {
public:
    static const Curve& get()
    {
        static const Curve curve;
        return curve;
    }

    const EC_GROUP* group() const noexcept { return group_; }
    const BIGNUM* order() const noexcept { return order_.get(); }
    const BIGNUM* half_order() const noexcept { return half_.get(); }
    const BIGNUM* field() const noexcept { return field_.get(); }

    Point new_point() const
    {
        Point p(EC_POINT_new(group_));
        if (!p) openssl_failure("EC_POINT_new");
        return p;
    }

    Curve(const Curve&) = delete;
    Curve& operator=(const Curve&) = delete;
    ~Curve() { EC_GROUP_free(group_); }

private:
    Curve() : group_(EC_GROUP_new_by_curve_name(NID_secp256k1)), order_(new_bn()), half_(new_bn()), field_(new_bn())
    {
        if (!group_) openssl_failure("EC_GROUP_new_by_curve_name(secp256k1)");
        auto ctx = new_ctx();
        if (EC_GROUP_get_order(group_, order_.get(), ctx.get()) != 1) openssl_failure("EC_GROUP_get_order");
        if (EC_GROUP_get_curve(group_, field_.get(), nullptr, nullptr, ctx.get()) != 1) openssl_failure("EC_GROUP_get_curve");
        if (BN_rshift1(half_.get(), order_.get()) != 1) openssl_failure("BN_rshift1");
    }

    EC_GROUP* group_;
    Bn order_;
    Bn half_;
    Bn field_;
};

Bytes point_bytes(const EC_POINT* point, bool compressed, BN_CTX* ctx)
{
    const auto& curve = Curve::get();
    auto form = compressed ? POINT_CONVERSION_COMPRESSED : POINT_CONVERSION_UNCOMPRESSED;
    Bytes out(compressed ? PublicKey::compressed_size : PublicKey::uncompressed_size);
    if (EC_POINT_point2oct(curve.group(), point, form, out.data(), out.size(), ctx) != out.size())
        openssl_failure("EC_POINT_point2oct");
    return out;
}

std::array<std::uint8_t, 32> bn_to_32(const BIGNUM* b)
{
    std::array<std::uint8_t, 32> out{};
    if (BN_bn2binpad(b, out.data(), 32) != 32) openssl_failure("BN_bn2binpad");
    return out;
}

using Block = std::array<std::uint8_t, 32>;

Block hmac_sha256(const Block& key, std::initializer_list<ByteView> parts)
{
    Bytes msg;
    for (auto p : parts)
        msg.insert(msg.end(), p.begin(), p.end());
    Block out{};
    unsigned int len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(), out.data(), &len) || len != 32)
        openssl_failure("HMAC-SHA256");
    OPENSSL_cleanse(msg.data(), msg.size());
    return out;
}

/// RFC 6979 section 3.2 generator over HMAC-SHA256 for a 256-bit group order.
class NonceGenerator {
public:
    NonceGenerator(ByteView secret, const Block& reduced_digest)
    {
        static constexpr std::uint8_t zero = 0x00, one = 0x01;
        v_.fill(0x01);
        k_.fill(0x00);
        k_ = hmac_sha256(k_, {v_, ByteView(&zero, 1), secret, reduced_digest});
        v_ = hmac_sha256(k_, {v_});
        k_ = hmac_sha256(k_, {v_, ByteView(&one, 1), secret, reduced_digest});
        v_ = hmac_sha256(k_, {v_});
    }

    ~NonceGenerator()
    {
        OPENSSL_cleanse(k_.data(), k_.size());
        OPENSSL_cleanse(v_.data(), v_.size());
    }

    Block next()
    {
        static constexpr std::uint8_t zero = 0x00;
        if (retry_) {
            k_ = hmac_sha256(k_, {v_, ByteView(&zero, 1)});
            v_ = hmac_sha256(k_, {v_});
        }
        retry_ = true;
        v_ = hmac_sha256(k_, {v_});
        return v_;
    }

private:
    Block k_{};
    Block v_{};
    bool retry_ = false;
};

bool in_scalar_range(const BIGNUM* b)
{
    return !BN_is_zero(b) && !BN_is_negative(b) && BN_cmp(b, Curve::get().order()) < 0;
}

} // namespace

PublicKey PublicKey::from_bytes(ByteView data)
{
    bool shape_ok = (data.size() == compressed_size && (data[0] == 0x02 || data[0] == 0x03))
        || (data.size() == uncompressed_size && data[0] == 0x04);
    if (!shape_ok)
        throw Error(ErrorCode::InvalidKey, "public key must be 33 bytes (02/03) or 65 bytes (04)");
    const auto& curve = Curve::get();
    auto ctx = new_ctx();
    auto point = curve.new_point();
    if (EC_POINT_oct2point(curve.group(), point.get(), data.data(), data.size(), ctx.get()) != 1) {
        ERR_clear_error();
        throw Error(ErrorCode::InvalidKey, "bytes do not encode a secp256k1 point");
    }
    return PublicKey(Bytes(data.begin(), data.end()));
}

PublicKey PublicKey::to_compressed() const
{
    if (compressed())
        return *this;
    const auto& curve = Curve::get();
    auto ctx = new_ctx();
    auto point = curve.new_point();
    if (EC_POINT_oct2point(curve.group(), point.get(), bytes_.data(), bytes_.size(), ctx.get()) != 1)
        openssl_failure("EC_POINT_oct2point");
    return PublicKey(point_bytes(point.get(), true, ctx.get()));
}

PrivateKey::~PrivateKey()
{
    OPENSSL_cleanse(scalar_.data(), scalar_.size());
}

PrivateKey PrivateKey::from_bytes(ByteView scalar, bool compressed)
{
    if (scalar.size() != 32)
        throw Error(ErrorCode::InvalidKey, "private key must be 32 bytes");
    auto d = bn_from(scalar);
    if (!in_scalar_range(d.get()))
        throw Error(ErrorCode::InvalidKey, "private key outside 1..n-1");
    std::array<std::uint8_t, 32> s{};
    std::copy(scalar.begin(), scalar.end(), s.begin());
    return PrivateKey(s, compressed);
}

PrivateKey PrivateKey::from_wif(std::string_view wif, std::uint8_t* version_out)
{
    Bytes body;
    try {
        body = base58check_decode_raw(wif);
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidKey, std::string("not a WIF key: ") + e.what());
    }
    bool compressed = false;
    if (body.size() == 34 && body[33] == 0x01)
        compressed = true;
    else if (body.size() != 33) {
        OPENSSL_cleanse(body.data(), body.size());
        throw Error(ErrorCode::InvalidKey, "WIF payload has the wrong length");
    }
    if (version_out)
        *version_out = body[0];
    auto key = from_bytes(ByteView(body).subspan(1, 32), compressed);
    OPENSSL_cleanse(body.data(), body.size());
    return key;
}

std::string PrivateKey::to_wif(std::uint8_t version) const
{
    Bytes body;
    body.push_back(version);
    body.insert(body.end(), scalar_.begin(), scalar_.end());
    if (compressed_)
        body.push_back(0x01);
    auto out = base58check_encode_raw(body);
    OPENSSL_cleanse(body.data(), body.size());
    return out;
}

PublicKey PrivateKey::public_key() const
{
    const auto& curve = Curve::get();
    auto ctx = new_ctx();
    auto d = bn_from(scalar_);
    BN_set_flags(d.get(), BN_FLG_CONSTTIME);
    auto point = curve.new_point();
    if (EC_POINT_mul(curve.group(), point.get(), d.get(), nullptr, nullptr, ctx.get()) != 1)
        openssl_failure("EC_POINT_mul");
    return PublicKey::from_bytes(point_bytes(point.get(), compressed_, ctx.get()));
}

RecoverableSig RecoverableSig::parse(ByteView data)
{
    if (data.size() != size)
        throw Error(ErrorCode::MalformedSignature, "compact signature must be 65 bytes, got " + std::to_string(data.size()));
    RecoverableSig sig;
    sig.header = data[0];
    std::copy_n(data.begin() + 1, 32, sig.r.begin());
    std::copy_n(data.begin() + 33, 32, sig.s.begin());
    return sig;
}

Bytes RecoverableSig::serialize() const
{
    Bytes out;
    out.reserve(size);
    out.push_back(header);
    out.insert(out.end(), r.begin(), r.end());
    out.insert(out.end(), s.begin(), s.end());
    return out;
}

RecoverableSig sign_recoverable(const PrivateKey& key, const Digest256& digest)
{
    const auto& curve = Curve::get();
    const BIGNUM* n = curve.order();
    auto ctx = new_ctx();

    auto d = bn_from(key.scalar());
    BN_set_flags(d.get(), BN_FLG_CONSTTIME);
    if (!in_scalar_range(d.get()))
        throw Error(ErrorCode::InvalidKey, "private key outside 1..n-1");

    auto z = bn_from(digest.view());
    if (BN_nnmod(z.get(), z.get(), n, ctx.get()) != 1) openssl_failure("BN_nnmod");
    auto reduced = bn_to_32(z.get());

    NonceGenerator nonces(key.scalar(), reduced);
    auto point = curve.new_point();
    auto x = new_bn(), y = new_bn(), r = new_bn(), s = new_bn(), kinv = new_bn(), tmp = new_bn();

    for (;;) {
        auto candidate = nonces.next();
        auto k = bn_from(candidate);
        OPENSSL_cleanse(candidate.data(), candidate.size());
        BN_set_flags(k.get(), BN_FLG_CONSTTIME);
        if (!in_scalar_range(k.get()))
            continue;

        if (EC_POINT_mul(curve.group(), point.get(), k.get(), nullptr, nullptr, ctx.get()) != 1)
            openssl_failure("EC_POINT_mul");
        if (EC_POINT_get_affine_coordinates(curve.group(), point.get(), x.get(), y.get(), ctx.get()) != 1)
            openssl_failure("EC_POINT_get_affine_coordinates");

        int recid = BN_is_odd(y.get()) ? 1 : 0;
        if (BN_cmp(x.get(), n) >= 0)
            recid |= 2;
        if (BN_nnmod(r.get(), x.get(), n, ctx.get()) != 1) openssl_failure("BN_nnmod");
        if (BN_is_zero(r.get()))
            continue;

        // s = k^-1 (z + r d) mod n
        if (!BN_mod_inverse(kinv.get(), k.get(), n, ctx.get())) openssl_failure("BN_mod_inverse");
        if (BN_mod_mul(tmp.get(), r.get(), d.get(), n, ctx.get()) != 1) openssl_failure("BN_mod_mul");
        if (BN_mod_add(tmp.get(), tmp.get(), z.get(), n, ctx.get()) != 1) openssl_failure("BN_mod_add");
        if (BN_mod_mul(s.get(), kinv.get(), tmp.get(), n, ctx.get()) != 1) openssl_failure("BN_mod_mul");
        if (BN_is_zero(s.get()))
            continue;

        if (BN_cmp(s.get(), curve.half_order()) > 0) {
            if (BN_sub(s.get(), n, s.get()) != 1) openssl_failure("BN_sub");
            recid ^= 1;
        }

        RecoverableSig sig;
        sig.header = static_cast<std::uint8_t>(27 + recid + (key.compressed() ? 4 : 0));
        sig.r = bn_to_32(r.get());
        sig.s = bn_to_32(s.get());
        return sig;
    }
}

PublicKey recover_public_key(const RecoverableSig& sig, const Digest256& digest)
{
    if (sig.header < 27 || sig.header > 34)
        throw Error(ErrorCode::RecoveryFailed, "header byte " + std::to_string(sig.header) + " outside 27..34");

    const auto& curve = Curve::get();
    const BIGNUM* n = curve.order();
    auto ctx = new_ctx();

    auto r = bn_from(sig.r);
    auto s = bn_from(sig.s);
    if (!in_scalar_range(r.get()) || !in_scalar_range(s.get()))
        throw Error(ErrorCode::RecoveryFailed, "r or s outside 1..n-1");

    int recid = sig.recovery_id();
    auto x = new_bn();
    if (!BN_copy(x.get(), r.get())) openssl_failure("BN_copy");
    if ((recid & 2) != 0 && BN_add(x.get(), x.get(), n) != 1) openssl_failure("BN_add");
    if (BN_cmp(x.get(), curve.field()) >= 0)
        throw Error(ErrorCode::RecoveryFailed, "x coordinate exceeds the field");

    auto big_r = curve.new_point();
    if (EC_POINT_set_compressed_coordinates(curve.group(), big_r.get(), x.get(), recid & 1, ctx.get()) != 1) {
        ERR_clear_error();
        throw Error(ErrorCode::RecoveryFailed, "no curve point for r");
    }

    // Q = r^-1 (s R - z G)
    auto z = bn_from(digest.view());
    auto rinv = new_bn(), u1 = new_bn(), u2 = new_bn();
    if (BN_nnmod(z.get(), z.get(), n, ctx.get()) != 1) openssl_failure("BN_nnmod");
    if (!BN_mod_inverse(rinv.get(), r.get(), n, ctx.get())) openssl_failure("BN_mod_inverse");
    if (BN_mod_mul(u1.get(), z.get(), rinv.get(), n, ctx.get()) != 1) openssl_failure("BN_mod_mul");
    if (!BN_is_zero(u1.get()) && BN_sub(u1.get(), n, u1.get()) != 1) openssl_failure("BN_sub");
    if (BN_mod_mul(u2.get(), s.get(), rinv.get(), n, ctx.get()) != 1) openssl_failure("BN_mod_mul");

    auto q = curve.new_point();
    if (EC_POINT_mul(curve.group(), q.get(), u1.get(), big_r.get(), u2.get(), ctx.get()) != 1)
        openssl_failure("EC_POINT_mul");
    if (EC_POINT_is_at_infinity(curve.group(), q.get()))
        throw Error(ErrorCode::RecoveryFailed, "recovered point at infinity");

    return PublicKey::from_bytes(point_bytes(q.get(), sig.compressed(), ctx.get()));
}

} // namespace eaward
