#include "support.hpp"
#include "vectors.hpp"

#include <eaward/script.hpp>
#include <eaward/transaction.hpp>

#include <fstream>
#include <sstream>

using namespace eaward;

namespace {

std::string fixture_hex(std::string_view txid)
{
    std::ifstream in(vectors::fixture_dir() / "chain" / (std::string(txid) + ".hex"));
    std::string s;
    in >> s;
    return s;
}

Transaction random_transaction(bool witness)
{
    Transaction tx;
    tx.version = static_cast<std::int32_t>(support::uniform(1, 2));
    tx.locktime = static_cast<std::uint32_t>(support::uniform(0, 0xffffffff));
    auto nin = support::uniform(1, 4);
    for (std::size_t i = 0; i < nin; ++i) {
        TxInput in;
        in.prev_txid.hash = Digest256::from_bytes(support::random_bytes(32));
        in.prev_vout = static_cast<std::uint32_t>(support::uniform(0, 10));
        in.script_sig = Script(support::random_bytes(support::uniform(0, 300)));
        in.sequence = static_cast<std::uint32_t>(support::uniform(0, 0xffffffff));
        if (witness) {
            auto items = support::uniform(0, 3);
            for (std::size_t k = 0; k < items; ++k) in.witness.push_back(support::random_bytes(support::uniform(0, 80)));
        }
        tx.inputs.push_back(std::move(in));
    }
    if (witness && !tx.has_witness()) tx.inputs[0].witness.push_back(support::random_bytes(1));
    auto nout = support::uniform(0, 4);
    for (std::size_t i = 0; i < nout; ++i)
        tx.outputs.push_back({support::uniform(0, max_money), Script(support::random_bytes(support::uniform(0, 100)))});
    return tx;
}

} // namespace

TEST(Transaction, EscrowFixtureShape)
{
    auto tx = parse_transaction(fixture_hex(vectors::escrow_txid));
    EXPECT_EQ(compute_txid(tx).hex(), vectors::escrow_txid);
    ASSERT_EQ(tx.inputs.size(), 1u);
    ASSERT_EQ(tx.outputs.size(), 1u);
    EXPECT_EQ(tx.outputs[0].value, 500000u);
    EXPECT_EQ(format_btc(total_output_value(tx)), "0.00500000");
    auto ops = tx.inputs[0].script_sig.ops();
    EXPECT_EQ(to_hex(ops.back().data), vectors::redeem_hex);
    auto payloads = extract_op_return(tx);
    ASSERT_EQ(payloads.size(), 1u);
    EXPECT_EQ(to_hex(payloads[0]), vectors::payload_hex);
    EXPECT_EQ(payloads[0].size(), 80u);
}

TEST(Transaction, TxidDisplayOrder)
{
    auto t = Txid::from_hex(vectors::original_txid);
    EXPECT_EQ(t.hex(), vectors::original_txid);
    EXPECT_EQ(t.hash.bytes[0], 0x6e);
    EXPECT_EAWARD_ERROR(Txid::from_hex("abcd"), ErrorCode::WrongLength);
}

TEST(Transaction, SerializeParseRoundTripProperty)
{
    for (int i = 0; i < support::property_cases; ++i) {
        bool witness = i % 2 == 1;
        auto tx = random_transaction(witness);
        auto raw = serialize(tx);
        auto back = parse_transaction(raw);
        ASSERT_EQ(back, tx);
        ASSERT_EQ(serialize(back), raw);
        ASSERT_EQ(compute_txid(back), compute_txid(tx));
        auto stripped = parse_transaction(serialize(tx, false));
        ASSERT_EQ(compute_txid(stripped), compute_txid(tx)) << "txid ignores witness";
        if (!witness) {
            ASSERT_EQ(compute_wtxid(tx), compute_txid(tx));
        }
    }
}

TEST(Transaction, MalformedInputs)
{
    auto hex = fixture_hex(vectors::escrow_txid);
    EXPECT_EAWARD_ERROR(parse_transaction(hex.substr(0, hex.size() - 2)), ErrorCode::TruncatedData);
    EXPECT_EAWARD_ERROR(parse_transaction(hex + "00"), ErrorCode::TrailingBytes);
    EXPECT_EAWARD_ERROR(parse_transaction(std::string_view("0200000")), ErrorCode::MalformedHex);
    EXPECT_EAWARD_ERROR(parse_transaction(std::string_view("")), ErrorCode::TruncatedData);
}

TEST(Transaction, NonCanonicalCompactSizeRejected)
{
    // version, then input count 1 written as fd0100
    Transaction tx = random_transaction(false);
    tx.inputs.resize(1);
    auto raw = serialize(tx);
    Bytes bad(raw.begin(), raw.begin() + 4);
    bad.push_back(0xfd);
    bad.push_back(0x01);
    bad.push_back(0x00);
    bad.insert(bad.end(), raw.begin() + 5, raw.end());
    EXPECT_EAWARD_ERROR(parse_transaction(bad), ErrorCode::MalformedTransaction);
}

TEST(Transaction, ValueAboveMaxMoneyRejected)
{
    Transaction tx = random_transaction(false);
    tx.outputs = {{max_money + 1, Script()}};
    EXPECT_EAWARD_ERROR(parse_transaction(serialize(tx)), ErrorCode::ValueOutOfRange);
}

TEST(Transaction, HexTamperChangesTxidOrFailsProperty)
{
    auto hex = fixture_hex(vectors::escrow_txid);
    for (int i = 0; i < support::property_cases; ++i) {
        auto mutated = hex;
        auto pos = support::uniform(0, hex.size() - 1);
        char c = mutated[pos];
        while (c == mutated[pos]) c = "0123456789abcdef"[support::uniform(0, 15)];
        mutated[pos] = c;
        try {
            auto tx = parse_transaction(mutated);
            ASSERT_NE(compute_txid(tx).hex(), vectors::escrow_txid) << "position " << pos;
        } catch (const Error&) {
        }
    }
}

TEST(Transaction, FormatBtc)
{
    EXPECT_EQ(format_btc(0), "0.00000000");
    EXPECT_EQ(format_btc(1), "0.00000001");
    EXPECT_EQ(format_btc(max_money), "21000000.00000000");
}
