#include "eaward/json_io.hpp"

#include "eaward/error.hpp"
#include "fileio.hpp"

namespace eaward {

using nlohmann::json;

namespace {

template <typename F>
auto guarded(const char* what, F&& f)
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidDocument, std::string(what) + ": " + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidDocument)
            throw;
        throw Error(ErrorCode::InvalidDocument, std::string(what) + ": " + e.what());
    }
}

std::vector<PublicKey> keys_from(const json& arr)
{
    std::vector<PublicKey> keys;
    for (const auto& k : arr)
        keys.push_back(PublicKey::from_hex(k.get<std::string>()));
    return keys;
}

json keys_to(const std::vector<PublicKey>& keys)
{
    json arr = json::array();
    for (const auto& k : keys)
        arr.push_back(k.hex());
    return arr;
}

double btc_value(std::uint64_t sat)
{
    return static_cast<double>(sat) / 1e8;
}

} // namespace

PolicyFile policy_from_json(const json& j)
{
    return guarded("policy", [&] {
        PolicyFile f;
        f.policy.m = j.at("m").get<int>();
        f.policy.pubkeys = keys_from(j.at("pubkeys"));
        if (j.contains("network"))
            f.network = network_from_name(j.at("network").get<std::string>());
        return f;
    });
}

json to_json(const EscrowPolicy& policy, Network net)
{
    return json{{"m", policy.m}, {"network", to_string(net)}, {"pubkeys", keys_to(policy.pubkeys)}};
}

ArbitrationAgreement agreement_from_json(const json& j)
{
    return guarded("agreement", [&] {
        ArbitrationAgreement a;
        a.seat = j.at("seat").get<std::string>();
        a.seat_jurisdiction = jurisdiction_from_name(j.value("seat_jurisdiction", std::string("other")));
        a.reasoned_award_opt_out = j.at("reasoned_award_opt_out").get<bool>();
        for (const auto& p : j.at("parties")) {
            auto letter = p.at("role").get<std::string>();
            auto role = letter.size() == 1 ? role_from_letter(letter[0]) : std::nullopt;
            if (!role)
                throw Error(ErrorCode::InvalidDocument, "unknown role '" + letter + "'");
            a.parties.push_back(Party{*role, p.at("legal_name").get<std::string>(), p.at("display_name").get<std::string>(),
                Address::parse(p.at("address").get<std::string>())});
        }
        const auto& pol = j.at("policy");
        a.policy.m = pol.at("m").get<int>();
        a.policy.pubkeys = keys_from(pol.at("pubkeys"));
        if (j.contains("agreement_text_hash") && !j["agreement_text_hash"].is_null())
            a.agreement_text_hash = Digest256::from_hex(j["agreement_text_hash"].get<std::string>());
        return a;
    });
}

json to_json(const ArbitrationAgreement& a)
{
    json parties = json::array();
    for (const auto& p : a.parties)
        parties.push_back({{"role", std::string(1, role_letter(p.role))}, {"legal_name", p.legal_name},
            {"display_name", p.display_name}, {"address", p.address.text()}});
    json j{{"seat", a.seat}, {"seat_jurisdiction", to_string(a.seat_jurisdiction)},
        {"reasoned_award_opt_out", a.reasoned_award_opt_out}, {"parties", parties},
        {"policy", {{"m", a.policy.m}, {"pubkeys", keys_to(a.policy.pubkeys)}}}};
    j["agreement_text_hash"] = a.agreement_text_hash ? json(a.agreement_text_hash->hex()) : json(nullptr);
    return j;
}

json load_json_file(const std::filesystem::path& path)
{
    auto text = detail::read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidDocument, path.string() + " is not JSON: " + e.what());
    }
}

namespace {

json script_pubkey_json(const Script& script, Network net)
{
    json j;
    try {
        j["asm"] = script_to_asm(script);
    } catch (const Error&) {
        j["asm"] = "[error]";
    }
    j["hex"] = script.hex();
    DecodedScript d;
    try {
        d = decode_script(script, net);
    } catch (const Error&) {
    }
    if (d.req_sigs)
        j["reqSigs"] = *d.req_sigs;
    j["type"] = to_string(d.kind);
    if (d.addresses) {
        json addrs = json::array();
        for (const auto& a : *d.addresses)
            addrs.push_back(a.text());
        j["addresses"] = addrs;
    }
    return j;
}

} // namespace

json to_json(const Transaction& tx, Network net)
{
    json j;
    j["txid"] = compute_txid(tx).hex();
    j["hash"] = compute_wtxid(tx).hex();
    j["version"] = tx.version;
    j["size"] = serialize(tx).size();
    j["locktime"] = tx.locktime;

    json vin = json::array();
    for (const auto& in : tx.inputs) {
        json i;
        if (in.is_coinbase()) {
            i["coinbase"] = in.script_sig.hex();
        } else {
            i["txid"] = in.prev_txid.hex();
            i["vout"] = in.prev_vout;
            json sig;
            try {
                sig["asm"] = script_to_asm(in.script_sig);
            } catch (const Error&) {
                sig["asm"] = "[error]";
            }
            sig["hex"] = in.script_sig.hex();
            i["scriptSig"] = sig;
        }
        if (!in.witness.empty()) {
            json w = json::array();
            for (const auto& item : in.witness)
                w.push_back(to_hex(item));
            i["txinwitness"] = w;
        }
        i["sequence"] = in.sequence;
        vin.push_back(i);
    }
    j["vin"] = vin;

    json vout = json::array();
    for (std::size_t n = 0; n < tx.outputs.size(); ++n) {
        const auto& out = tx.outputs[n];
        vout.push_back({{"value", btc_value(out.value)}, {"n", n}, {"scriptPubKey", script_pubkey_json(out.script_pubkey, net)}});
    }
    j["vout"] = vout;
    return j;
}

json script_to_json(const Script& script, Network net)
{
    auto d = decode_script(script, net);
    json j;
    j["asm"] = script_to_asm(script);
    j["hex"] = script.hex();
    j["type"] = to_string(d.kind);
    if (d.req_sigs)
        j["reqSigs"] = *d.req_sigs;
    if (d.addresses) {
        json addrs = json::array();
        for (const auto& a : *d.addresses)
            addrs.push_back(a.text());
        j["addresses"] = addrs;
    }
    if (d.kind != ScriptKind::p2sh)
        j["p2sh"] = Address::from_parts(AddressType::p2sh, hash160(script.bytes()), net).text();
    return j;
}

json to_json(const AwardMetadata& meta)
{
    json parts = json::array();
    for (const auto& p : meta.participants)
        parts.push_back({{"role", std::string(1, role_letter(p.role))}, {"role_name", role_name(p.role)},
            {"display_name", p.display_name}, {"suffix", p.suffix}});
    auto payload = encode_metadata(meta);
    return json{{"participants", parts}, {"seat", meta.seat}, {"sig_fragment", meta.sig_fragment},
        {"attest_message", attest_message(meta)}, {"text", std::string(payload.begin(), payload.end())},
        {"hex", to_hex(payload)}, {"size", payload.size()}};
}

json to_json(const LinkageReport& report)
{
    json parties = json::array();
    for (const auto& p : report.parties) {
        parties.push_back({{"role", std::string(1, role_letter(p.role))},
            {"agreement_address", p.agreement_address ? json(p.agreement_address->text()) : json(nullptr)},
            {"metadata_name", p.metadata_name}, {"metadata_suffix", p.metadata_suffix},
            {"suffix_match", p.suffix_match}, {"address_in_script", p.address_in_script}});
    }
    json addrs = json::array();
    for (const auto& a : report.script_addresses)
        addrs.push_back(a.text());
    return json{{"txid", report.txid.hex()}, {"parties", parties}, {"seat_match", report.seat_match},
        {"reqSigs", report.req_sigs}, {"script_addresses", addrs}, {"redeem_script", report.redeem_script.hex()},
        {"metadata", to_json(report.metadata)}, {"overall", report.overall()}};
}

json to_json(const AnchorProof& proof)
{
    json j{{"doc_hash", proof.doc_hash.hex()}, {"txid", proof.txid.hex()}, {"vout_index", proof.vout_index}};
    j["block_time"] = proof.block_time ? json(format_iso8601(*proof.block_time)) : json(nullptr);
    j["confirmations"] = proof.confirmations ? json(*proof.confirmations) : json(nullptr);
    return j;
}

json to_json(const AuthenticationCertificate& cert)
{
    json atts = json::array();
    for (const auto& va : cert.attestations())
        atts.push_back({{"role", std::string(1, role_letter(va.role))}, {"address", va.signed_message.address.text()},
            {"message", va.signed_message.message}, {"signature", va.signed_message.signature_b64},
            {"verified", true}, {"fragment_match", va.fragment_match}});
    const auto& t = cert.time_evidence();
    const auto& i = cert.intent_evidence();
    json j;
    j["txid"] = cert.txid().hex();
    j["origin_evidence"] = {{"attestations", atts}, {"linkage", to_json(cert.linkage())}};
    j["time_evidence"] = {{"block_time", format_iso8601(t.block_time)}, {"confirmations", t.confirmations},
        {"block_hash", t.block_hash ? json(*t.block_hash) : json(nullptr)}};
    j["intent_evidence"] = {{"agreement_text_hash", i.agreement_text_hash ? json(i.agreement_text_hash->hex()) : json(nullptr)},
        {"reasoned_award_opt_out", i.reasoned_award_opt_out}, {"attest_message", i.attest_message}, {"seat", i.seat},
        {"seat_jurisdiction", to_string(i.seat_jurisdiction)}};
    j["amount_btc"] = format_btc(cert.amount_satoshi());
    j["certifier"] = cert.certifier();
    j["issued_at"] = format_iso8601(cert.issued_at());
    j["findings"] = cert.findings();
    j["caveats"] = cert.caveats();
    j["statement"] = cert.statement();
    return j;
}

json to_json(const std::vector<AgreementIssue>& issues)
{
    json arr = json::array();
    for (const auto& i : issues)
        arr.push_back({{"severity", i.severity == AgreementIssue::Severity::violation ? "violation" : "warning"}, {"message", i.message}});
    return arr;
}

} // namespace eaward
