// eaward: command-line front end for the multisig e-award workflow.
//
// Exit codes: 0 success, 1 verification false ("false" on stdout),
// 2 usage or data error (diagnostic on stderr).

#include <eaward/anchor.hpp>
#include <eaward/attestation.hpp>
#include <eaward/chain.hpp>
#include <eaward/error.hpp>
#include <eaward/escrow.hpp>
#include <eaward/json_io.hpp>
#include <eaward/message.hpp>
#include <eaward/metadata.hpp>
#include <eaward/script.hpp>
#include <eaward/transaction.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace eaward;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_false = 1;
constexpr int exit_error = 2;

struct Globals {
    std::string network = "testnet";
    std::string source = "live";
    std::string endpoint;
    std::string fixture_root;
    std::string store_root = ".eaward/objects";
    double timeout_s = 10.0;
    bool json = false;
    CLI::Option* network_opt = nullptr;
};

// A failed check the user asked about, as opposed to bad input.
struct VerificationFalse {
    std::string reason;
};

Network net(const Globals& g)
{
    return network_from_name(g.network);
}

std::string default_endpoint(Network n)
{
    return n == Network::mainnet ? "https://blockstream.info/api" : "https://blockstream.info/testnet/api";
}

ChainClient chain(const Globals& g)
{
    if (g.source == "fixture") {
        if (g.fixture_root.empty())
            throw Error(ErrorCode::InvalidDocument, "--source fixture needs --fixture-root or EAWARD_FIXTURE_ROOT");
        return ChainClient(ChainSource::fixture(g.fixture_root, net(g)));
    }
    auto src = ChainSource::live(g.endpoint.empty() ? default_endpoint(net(g)) : g.endpoint, net(g));
    src.timeout = std::chrono::milliseconds(static_cast<long long>(g.timeout_s * 1000));
    return ChainClient(src);
}

std::string trim(std::string s)
{
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && ws(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::NotFound, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// key-ref: "env:NAME" or a file path; the value is WIF or 64 hex digits.
PrivateKey load_key(const std::string& ref, Network n)
{
    std::string value;
    if (ref.rfind("env:", 0) == 0) {
        const char* v = std::getenv(ref.c_str() + 4);
        if (!v) throw Error(ErrorCode::InvalidKey, "environment variable " + ref.substr(4) + " is not set");
        value = v;
    } else {
        value = slurp(ref);
    }
    value = trim(value);
    if (value.size() == 64 && value.find_first_not_of("0123456789abcdefABCDEF") == std::string::npos)
        return PrivateKey::from_bytes(from_hex(value));
    std::uint8_t version = 0;
    auto key = PrivateKey::from_wif(value, &version);
    if (version != params(n).wif_version)
        throw Error(ErrorCode::InvalidKey, "WIF key is not for " + std::string(to_string(n)));
    return key;
}

Txid resolve_txid(const std::string& text)
{
    return Txid::from_hex(text);
}

void print(const json& j)
{
    std::cout << j.dump(2) << '\n';
}

// --------------------------------------------------------------------------

int cmd_agreement_validate(const Globals& g, const std::string& file)
{
    auto a = agreement_from_json(load_json_file(file));
    auto issues = validate_agreement(a);
    bool ok = !has_violations(issues);
    if (g.json) {
        print(json{{"valid", ok}, {"issues", to_json(issues)}});
    } else {
        for (const auto& i : issues)
            std::cerr << (i.severity == AgreementIssue::Severity::violation ? "violation: " : "warning: ") << i.message
                      << '\n';
        std::cout << (ok ? "true" : "false") << '\n';
    }
    return ok ? exit_ok : exit_false;
}

int cmd_escrow_address(const Globals& g, const std::string& file)
{
    auto pf = policy_from_json(load_json_file(file));
    auto n = g.network_opt->count() > 0 ? net(g) : pf.network;
    auto script = build_redeem_script(pf.policy);
    auto addr = p2sh_address(script, n);
    if (g.json) {
        auto j = script_to_json(Script(script.bytes), n);
        j["network"] = std::string(to_string(n));
        print(j);
    } else {
        std::cout << addr.text() << '\n';
    }
    return exit_ok;
}

int cmd_meta_message(const Globals&, const std::string& file)
{
    std::cout << attest_message_for(agreement_from_json(load_json_file(file))) << '\n';
    return exit_ok;
}

int cmd_meta_encode(const Globals& g, const std::string& file, const std::string& sig)
{
    auto a = agreement_from_json(load_json_file(file));
    auto issues = validate_agreement(a);
    if (has_violations(issues))
        throw Error(ErrorCode::InvalidDocument, "agreement is invalid; run 'agreement validate'");
    const auto& arb = a.party(Role::arbitrator)->address;
    auto message = attest_message_for(a);
    if (!verify_message(arb, sig, message))
        throw VerificationFalse{"signature does not verify for " + arb.text() + " over \"" + message + "\""};
    auto meta = metadata_for(a, signature_fragment(sig));
    auto payload = encode_metadata(meta);
    if (g.json) {
        auto j = to_json(meta);
        j["script"] = make_nulldata_script(payload).hex();
        print(j);
    } else {
        std::cout << to_hex(payload) << '\n';
    }
    return exit_ok;
}

int cmd_meta_decode(const Globals& g, const std::string& hex)
{
    auto meta = decode_metadata(from_hex(trim(hex)));
    if (g.json) {
        print(to_json(meta));
        return exit_ok;
    }
    for (auto r : all_roles) {
        const auto& t = meta.participant(r);
        std::cout << role_letter(r) << ' ' << t.display_name << ' ' << t.suffix << '\n';
    }
    std::cout << "seat " << meta.seat << '\n' << "fragment " << meta.sig_fragment << '\n';
    return exit_ok;
}

int cmd_tx_decode(const Globals& g, const std::string& arg)
{
    auto text = trim(arg);
    std::string hex = text;
    if (text.size() == 64)
        hex = chain(g).get_raw_transaction(resolve_txid(text));
    print(to_json(parse_transaction(hex), net(g)));
    return exit_ok;
}

int cmd_tx_status(const Globals& g, const std::string& txid)
{
    auto st = chain(g).get_tx_status(resolve_txid(trim(txid)));
    std::cout << json::parse(status_to_json(st)).dump(2) << '\n';
    return exit_ok;
}

int cmd_tx_broadcast(const Globals& g, const std::string& hex)
{
    std::cout << chain(g).broadcast(trim(hex)).hex() << '\n';
    return exit_ok;
}

int cmd_script_decode(const Globals& g, const std::string& hex)
{
    print(script_to_json(Script::from_hex(trim(hex)), net(g)));
    return exit_ok;
}

int cmd_msg_sign(const Globals& g, const std::string& key_ref, const std::string& message)
{
    auto sm = sign_message(load_key(key_ref, net(g)), message, net(g));
    if (g.json)
        print(json{{"address", sm.address.text()}, {"message", sm.message}, {"signature", sm.signature_b64}});
    else
        std::cout << sm.signature_b64 << '\n';
    return exit_ok;
}

int cmd_msg_verify(const Globals&, const std::string& address, const std::string& sig, const std::string& message)
{
    bool ok = verify_message(Address::parse(address), sig, message);
    std::cout << (ok ? "true" : "false") << '\n';
    return ok ? exit_ok : exit_false;
}

int cmd_anchor_create(const Globals& g, const std::string& file)
{
    auto doc = AwardDocument::from_file(file);
    auto hash = checksum_award(doc);
    ObjectStore(g.store_root).store(doc.bytes);
    auto script = make_nulldata_script(build_anchor_payload(hash));
    if (g.json)
        print(json{{"sha256", hash.hex()}, {"script", script.hex()}, {"stored", g.store_root}});
    else
        std::cout << hash.hex() << '\n';
    return exit_ok;
}

int cmd_anchor_verify(const Globals& g, const std::string& file, const std::string& txid_text)
{
    auto client = chain(g);
    auto txid = resolve_txid(trim(txid_text));
    auto tx = parse_transaction(client.get_raw_transaction(txid));
    AnchorProof proof;
    try {
        proof = verify_anchor(AwardDocument::from_file(file), tx);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::HashMismatch || e.code() == ErrorCode::NoAnchorFound)
            throw VerificationFalse{e.what()};
        throw;
    }
    auto st = client.get_tx_status(txid);
    proof.confirmations = st.confirmations;
    proof.block_time = st.block_time;
    if (g.json)
        print(to_json(proof));
    else
        std::cout << "true\n";
    return exit_ok;
}

SignedMessage parse_attestation(const std::string& spec, const ArbitrationAgreement& a, const AwardMetadata& meta)
{
    // bare signature: the arbitrator over the on-chain line;
    // otherwise address:signature:message
    auto first = spec.find(':');
    if (first == std::string::npos)
        return {a.party(Role::arbitrator)->address, attest_message(meta), spec};
    auto second = spec.find(':', first + 1);
    if (second == std::string::npos)
        throw Error(ErrorCode::InvalidDocument, "attestation must be <sig> or <address>:<sig>:<message>");
    return {Address::parse(spec.substr(0, first)), spec.substr(second + 1), spec.substr(first + 1, second - first - 1)};
}

int cmd_certify(const Globals& g, const std::string& file, const std::string& txid_text,
    const std::vector<std::string>& attestations, const std::string& certifier)
{
    auto a = agreement_from_json(load_json_file(file));
    auto client = chain(g);
    auto txid = resolve_txid(trim(txid_text));
    auto tx = parse_transaction(client.get_raw_transaction(txid));
    std::optional<TxStatus> status;
    try {
        status = client.get_tx_status(txid);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFound) throw;
    }
    std::vector<SignedMessage> signed_messages;
    try {
        auto meta = match_transaction(a, tx).metadata;
        for (const auto& s : attestations) signed_messages.push_back(parse_attestation(s, a, meta));
        auto cert = issue_certificate(a, tx, status, signed_messages, certifier, now_utc());
        if (g.json)
            print(to_json(cert));
        else
            std::cout << cert.statement();
    } catch (const Error& e) {
        switch (e.code()) {
        case ErrorCode::LinkageFailed:
        case ErrorCode::AttestationInvalid:
        case ErrorCode::MissingArbitratorAttestation:
        case ErrorCode::NoTimeEvidence:
        case ErrorCode::NoRedeemScript:
        case ErrorCode::NoMetadata:
        case ErrorCode::MetadataUnparseable:
            throw VerificationFalse{e.what()};
        default:
            throw;
        }
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multisig e-award toolkit: escrow, on-chain metadata, signed attestations and certificates."};
    app.require_subcommand(1);
    Globals g;
    g.network_opt = app.add_option("--network", g.network, "mainnet or testnet")
                        ->check(CLI::IsMember({"mainnet", "testnet"}))
                        ->envname("EAWARD_NETWORK");
    app.add_option("--source", g.source, "chain source: live or fixture")
        ->check(CLI::IsMember({"live", "fixture"}))
        ->envname("EAWARD_SOURCE");
    app.add_option("--endpoint", g.endpoint, "Esplora-style REST base URL")->envname("EAWARD_ENDPOINT");
    app.add_option("--fixture-root", g.fixture_root, "directory of <txid>.hex / <txid>.status")
        ->envname("EAWARD_FIXTURE_ROOT");
    app.add_option("--store-root", g.store_root, "content-addressed object store")->envname("EAWARD_STORE_ROOT");
    app.add_option("--timeout", g.timeout_s, "request timeout in seconds")->check(CLI::PositiveNumber);
    app.add_flag("--json", g.json, "machine-readable output");

    std::function<int()> action;
    std::string s1, s2, s3;
    std::vector<std::string> attestations;
    std::string certifier;

    auto* agreement = app.add_subcommand("agreement", "arbitration agreement records")->require_subcommand(1);
    auto* av = agreement->add_subcommand("validate", "check an agreement file");
    av->add_option("file", s1)->required()->check(CLI::ExistingFile);
    av->callback([&] { action = [&] { return cmd_agreement_validate(g, s1); }; });

    auto* escrow = app.add_subcommand("escrow", "M-of-N escrow")->require_subcommand(1);
    auto* ea = escrow->add_subcommand("address", "P2SH address for a policy file");
    ea->add_option("policy-file", s1)->required()->check(CLI::ExistingFile);
    ea->callback([&] { action = [&] { return cmd_escrow_address(g, s1); }; });

    auto* meta = app.add_subcommand("meta", "OP_RETURN award line")->require_subcommand(1);
    auto* me = meta->add_subcommand("encode", "build the payload once the arbitrator has signed");
    me->add_option("agreement", s1)->required()->check(CLI::ExistingFile);
    me->add_option("--sig", s2, "arbitrator's base64 signature over the award line")->required();
    me->callback([&] { action = [&] { return cmd_meta_encode(g, s1, s2); }; });
    auto* md = meta->add_subcommand("decode", "parse a payload");
    md->add_option("hex", s1)->required();
    md->callback([&] { action = [&] { return cmd_meta_decode(g, s1); }; });
    auto* mm = meta->add_subcommand("message", "the line the arbitrator signs");
    mm->add_option("agreement", s1)->required()->check(CLI::ExistingFile);
    mm->callback([&] { action = [&] { return cmd_meta_message(g, s1); }; });

    auto* tx = app.add_subcommand("tx", "transactions")->require_subcommand(1);
    auto* td = tx->add_subcommand("decode", "decode raw hex, or fetch and decode a txid");
    td->add_option("hex-or-txid", s1)->required();
    td->callback([&] { action = [&] { return cmd_tx_decode(g, s1); }; });
    auto* ts = tx->add_subcommand("status", "confirmation status of a txid");
    ts->add_option("txid", s1)->required();
    ts->callback([&] { action = [&] { return cmd_tx_status(g, s1); }; });
    auto* tb = tx->add_subcommand("broadcast", "submit raw hex to the chain source");
    tb->add_option("hex", s1)->required();
    tb->callback([&] { action = [&] { return cmd_tx_broadcast(g, s1); }; });

    auto* script = app.add_subcommand("script", "scripts")->require_subcommand(1);
    auto* sd = script->add_subcommand("decode", "decode script hex");
    sd->add_option("hex", s1)->required();
    sd->callback([&] { action = [&] { return cmd_script_decode(g, s1); }; });

    auto* msg = app.add_subcommand("msg", "signed messages")->require_subcommand(1);
    auto* ms = msg->add_subcommand("sign", "sign with a key from a file or env:VAR");
    ms->add_option("key-ref", s1, "file path or env:VAR holding WIF or hex")->required();
    ms->add_option("message", s2)->required();
    ms->callback([&] { action = [&] { return cmd_msg_sign(g, s1, s2); }; });
    auto* mv = msg->add_subcommand("verify", "verify a signed message");
    mv->add_option("address", s1)->required();
    mv->add_option("signature", s2)->required();
    mv->add_option("message", s3)->required();
    mv->callback([&] { action = [&] { return cmd_msg_verify(g, s1, s2, s3); }; });

    auto* anchor = app.add_subcommand("anchor", "award document anchoring")->require_subcommand(1);
    auto* ac = anchor->add_subcommand("create", "store a document and print its digest");
    ac->add_option("file", s1)->required()->check(CLI::ExistingFile);
    ac->callback([&] { action = [&] { return cmd_anchor_create(g, s1); }; });
    auto* avf = anchor->add_subcommand("verify", "check a document against an anchoring transaction");
    avf->add_option("file", s1)->required()->check(CLI::ExistingFile);
    avf->add_option("txid", s2)->required();
    avf->callback([&] { action = [&] { return cmd_anchor_verify(g, s1, s2); }; });

    auto* certify = app.add_subcommand("certify", "issue an authentication certificate");
    certify->add_option("agreement", s1)->required()->check(CLI::ExistingFile);
    certify->add_option("txid", s2)->required();
    certify->add_option("--attestation", attestations, "<sig> for the arbitrator, or <address>:<sig>:<message>")
        ->required();
    certify->add_option("--certifier", certifier, "who issues the certificate")->required();
    certify->callback([&] { action = [&] { return cmd_certify(g, s1, s2, attestations, certifier); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_error;
    }

    try {
        return action();
    } catch (const VerificationFalse& v) {
        std::cout << "false\n";
        std::cerr << v.reason << '\n';
        return exit_false;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
}
