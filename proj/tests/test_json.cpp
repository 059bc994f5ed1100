#include "support.hpp"
#include "vectors.hpp"

#include <eaward/chain.hpp>
#include <eaward/json_io.hpp>

using namespace eaward;

namespace {

Transaction escrow_tx()
{
    ChainClient c(ChainSource::fixture(vectors::fixture_dir() / "chain"));
    return parse_transaction(c.get_raw_transaction(Txid::from_hex(vectors::escrow_txid)));
}

} // namespace

TEST(Json, DecodedTransactionShape)
{
    auto j = to_json(escrow_tx(), Network::testnet);
    EXPECT_EQ(j["txid"], vectors::escrow_txid);
    EXPECT_EQ(j["version"], 2);
    ASSERT_EQ(j["vout"].size(), 1u);
    const auto& out = j["vout"][0];
    EXPECT_DOUBLE_EQ(out["value"].get<double>(), 0.005);
    EXPECT_EQ(out["n"], 0);
    EXPECT_EQ(out["scriptPubKey"]["type"], "nulldata");
    EXPECT_EQ(out["scriptPubKey"]["asm"], "OP_RETURN " + std::string(vectors::payload_hex));
    auto sig_asm = j["vin"][0]["scriptSig"]["asm"].get<std::string>();
    EXPECT_EQ(sig_asm.substr(sig_asm.size() - vectors::redeem_hex.size()), vectors::redeem_hex);
}

TEST(Json, DecodedRedeemScript)
{
    auto j = script_to_json(Script::from_hex(vectors::redeem_hex), Network::testnet);
    EXPECT_EQ(j["type"], "multisig");
    EXPECT_EQ(j["reqSigs"], 2);
    EXPECT_EQ(j["p2sh"], vectors::p2sh_testnet);
    EXPECT_EQ(j["addresses"], nlohmann::json::array({vectors::addr_a, vectors::addr_c, vectors::addr_r}));
}

TEST(Json, PolicyFile)
{
    auto pf = policy_from_json(load_json_file(vectors::fixture_dir() / "worked_example" / "policy.json"));
    EXPECT_EQ(pf.network, Network::testnet);
    EXPECT_EQ(build_redeem_script(pf.policy).hex(), vectors::redeem_hex);
    EXPECT_EQ(policy_from_json(to_json(pf.policy, pf.network)).policy.pubkeys, pf.policy.pubkeys);
    EXPECT_EAWARD_ERROR(policy_from_json(nlohmann::json{{"m", "two"}}), ErrorCode::InvalidDocument);
    EXPECT_EAWARD_ERROR(load_json_file(vectors::fixture_dir() / "missing.json"), ErrorCode::NotFound);
}

TEST(Json, Metadata)
{
    auto j = to_json(decode_metadata(from_hex(vectors::payload_hex)));
    EXPECT_EQ(j["text"], vectors::payload_text);
    EXPECT_EQ(j["size"], 80);
    EXPECT_EQ(j["attest_message"], vectors::attest_message);
}
