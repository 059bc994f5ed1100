#include "eaward/transaction.hpp"

#include "eaward/error.hpp"

#include <algorithm>
#include <cstdio>

namespace eaward {

Txid Txid::from_hex(std::string_view display_hex)
{
    auto bytes = eaward::from_hex(display_hex);
    std::reverse(bytes.begin(), bytes.end());
    return Txid{Digest256::from_bytes(bytes)};
}

std::string Txid::hex() const
{
    Bytes rev(hash.bytes.rbegin(), hash.bytes.rend());
    return to_hex(rev);
}

bool Transaction::has_witness() const noexcept
{
    return std::any_of(inputs.begin(), inputs.end(), [](const TxInput& in) { return !in.witness.empty(); });
}

namespace {

class Reader {
public:
    explicit Reader(ByteView data) : data_(data) {}

    [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }

    ByteView take(std::size_t n, const char* what)
    {
        if (remaining() < n)
            throw Error(ErrorCode::TruncatedData, std::string("transaction ends inside ") + what + " at byte " + std::to_string(pos_));
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    std::uint8_t u8(const char* what) { return take(1, what)[0]; }

    std::uint64_t le(std::size_t width, const char* what)
    {
        auto b = take(width, what);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < width; ++i)
            v |= std::uint64_t{b[i]} << (8 * i);
        return v;
    }

    std::uint64_t compact_size(const char* what)
    {
        auto first = u8(what);
        std::uint64_t v = first;
        std::uint64_t min = 0;
        if (first == 0xfd) {
            v = le(2, what);
            min = 0xfd;
        } else if (first == 0xfe) {
            v = le(4, what);
            min = 0x10000;
        } else if (first == 0xff) {
            v = le(8, what);
            min = 0x100000000ULL;
        }
        if (v < min)
            throw Error(ErrorCode::MalformedTransaction, std::string("non-canonical length prefix for ") + what);
        return v;
    }

    /// Count of items each at least `min_item` bytes long; bounded by what is left.
    std::size_t count(const char* what, std::size_t min_item)
    {
        auto n = compact_size(what);
        if (n > remaining() / std::max<std::size_t>(min_item, 1))
            throw Error(ErrorCode::TruncatedData, std::string("declared ") + what + " count exceeds remaining data");
        return static_cast<std::size_t>(n);
    }

    Bytes var_bytes(const char* what)
    {
        auto n = compact_size(what);
        if (n > remaining())
            throw Error(ErrorCode::TruncatedData, std::string("transaction ends inside ") + what + " at byte " + std::to_string(pos_));
        auto b = take(static_cast<std::size_t>(n), what);
        return {b.begin(), b.end()};
    }

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

class Writer {
public:
    void le(std::uint64_t v, std::size_t width)
    {
        for (std::size_t i = 0; i < width; ++i)
            out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
    }
    void compact_size(std::uint64_t n)
    {
        if (n < 0xfd) {
            le(n, 1);
        } else if (n <= 0xffff) {
            out.push_back(0xfd);
            le(n, 2);
        } else if (n <= 0xffffffffULL) {
            out.push_back(0xfe);
            le(n, 4);
        } else {
            out.push_back(0xff);
            le(n, 8);
        }
    }
    void var_bytes(ByteView b)
    {
        compact_size(b.size());
        out.insert(out.end(), b.begin(), b.end());
    }

    Bytes out;
};

constexpr std::size_t min_input_size = 41;  // outpoint + empty script + sequence
constexpr std::size_t min_output_size = 9;  // value + empty script

std::vector<TxInput> read_inputs(Reader& r, std::size_t n)
{
    std::vector<TxInput> inputs(n);
    for (auto& in : inputs) {
        in.prev_txid.hash = Digest256::from_bytes(r.take(32, "input outpoint"));
        in.prev_vout = static_cast<std::uint32_t>(r.le(4, "input outpoint index"));
        in.script_sig = Script(r.var_bytes("scriptSig"));
        in.sequence = static_cast<std::uint32_t>(r.le(4, "input sequence"));
    }
    return inputs;
}

std::vector<TxOutput> read_outputs(Reader& r)
{
    std::vector<TxOutput> outputs(r.count("output", min_output_size));
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        auto& out = outputs[i];
        out.value = r.le(8, "output value");
        if (out.value > max_money)
            throw Error(ErrorCode::ValueOutOfRange, "output " + std::to_string(i) + " value exceeds 21e14 satoshi");
        out.script_pubkey = Script(r.var_bytes("scriptPubKey"));
    }
    return outputs;
}

} // namespace

Transaction parse_transaction(ByteView raw)
{
    Reader r(raw);
    Transaction tx;
    tx.version = static_cast<std::int32_t>(static_cast<std::uint32_t>(r.le(4, "version")));

    std::uint8_t flags = 0;
    tx.inputs = read_inputs(r, r.count("input", min_input_size));
    if (tx.inputs.empty()) {
        flags = r.u8("segwit flag");
        if (flags != 0) {
            tx.inputs = read_inputs(r, r.count("input", min_input_size));
            tx.outputs = read_outputs(r);
        }
    } else {
        tx.outputs = read_outputs(r);
    }

    if ((flags & 1) != 0) {
        flags ^= 1;
        for (auto& in : tx.inputs) {
            auto items = r.count("witness item", 1);
            in.witness.reserve(items);
            for (std::size_t i = 0; i < items; ++i)
                in.witness.push_back(r.var_bytes("witness item"));
        }
        if (!tx.has_witness())
            throw Error(ErrorCode::MalformedTransaction, "witness flag set but every witness is empty");
    }
    if (flags != 0)
        throw Error(ErrorCode::MalformedTransaction, "unknown serialization flag " + std::to_string(flags));

    tx.locktime = static_cast<std::uint32_t>(r.le(4, "locktime"));
    if (r.remaining() != 0)
        throw Error(ErrorCode::TrailingBytes, std::to_string(r.remaining()) + " bytes after locktime");
    return tx;
}

Transaction parse_transaction(std::string_view hex)
{
    auto raw = from_hex(hex);
    return parse_transaction(ByteView(raw));
}

Bytes serialize(const Transaction& tx, bool include_witness)
{
    bool witness = include_witness && tx.has_witness();
    Writer w;
    w.le(static_cast<std::uint32_t>(tx.version), 4);
    if (witness) {
        w.out.push_back(0x00);
        w.out.push_back(0x01);
    }
    w.compact_size(tx.inputs.size());
    for (const auto& in : tx.inputs) {
        w.out.insert(w.out.end(), in.prev_txid.hash.bytes.begin(), in.prev_txid.hash.bytes.end());
        w.le(in.prev_vout, 4);
        w.var_bytes(in.script_sig.bytes());
        w.le(in.sequence, 4);
    }
    w.compact_size(tx.outputs.size());
    for (const auto& out : tx.outputs) {
        w.le(out.value, 8);
        w.var_bytes(out.script_pubkey.bytes());
    }
    if (witness) {
        for (const auto& in : tx.inputs) {
            w.compact_size(in.witness.size());
            for (const auto& item : in.witness)
                w.var_bytes(item);
        }
    }
    w.le(tx.locktime, 4);
    return std::move(w.out);
}

Txid compute_txid(const Transaction& tx)
{
    return Txid{hash256(serialize(tx, false))};
}

Txid compute_wtxid(const Transaction& tx)
{
    return Txid{hash256(serialize(tx, true))};
}

std::vector<Bytes> extract_op_return(const Transaction& tx)
{
    std::vector<Bytes> out;
    for (const auto& o : tx.outputs) {
        try {
            if (auto payload = nulldata_payload(o.script_pubkey))
                out.push_back(std::move(*payload));
        } catch (const Error&) {
            // a malformed script after OP_RETURN is not nulldata
        }
    }
    return out;
}

std::uint64_t total_output_value(const Transaction& tx) noexcept
{
    std::uint64_t sum = 0;
    for (const auto& o : tx.outputs)
        sum += o.value;
    return sum;
}

std::string format_btc(std::uint64_t satoshi)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu.%08llu", static_cast<unsigned long long>(satoshi / 100'000'000ULL),
        static_cast<unsigned long long>(satoshi % 100'000'000ULL));
    return buf;
}

} // namespace eaward
