#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "eaward/chain.hpp"

#include "eaward/error.hpp"
#include "fileio.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <mutex>
#include <set>

namespace eaward {

namespace fs = std::filesystem;
using nlohmann::json;

ChainSource ChainSource::live(std::string endpoint, Network net)
{
    ChainSource s;
    s.mode = Mode::live;
    s.endpoint = std::move(endpoint);
    s.network = net;
    return s;
}

ChainSource ChainSource::fixture(fs::path root, Network net)
{
    ChainSource s;
    s.mode = Mode::fixture;
    s.fixture_root = std::move(root);
    s.network = net;
    return s;
}

TxStatus parse_status_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidDocument, std::string("status file is not JSON: ") + e.what());
    }
    TxStatus st;
    try {
        auto conf = j.at("confirmations").get<std::int64_t>();
        if (conf < 0)
            throw Error(ErrorCode::InvalidDocument, "confirmations must be >= 0");
        st.confirmations = static_cast<std::uint32_t>(conf);
        if (j.contains("block_time") && !j["block_time"].is_null())
            st.block_time = parse_iso8601(j["block_time"].get<std::string>());
        if (j.contains("block_hash") && !j["block_hash"].is_null())
            st.block_hash = j["block_hash"].get<std::string>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidDocument, std::string("bad status file: ") + e.what());
    }
    bool has_block = st.block_time || st.block_hash;
    if ((st.confirmations == 0) == has_block)
        throw Error(ErrorCode::InvalidDocument, "confirmations = 0 must coincide with absent block fields");
    if (st.confirmations > 0 && !st.block_time)
        throw Error(ErrorCode::InvalidDocument, "confirmed status needs a block_time");
    return st;
}

std::string status_to_json(const TxStatus& status)
{
    json j;
    j["confirmations"] = status.confirmations;
    j["block_time"] = status.block_time ? json(format_iso8601(*status.block_time)) : json(nullptr);
    j["block_hash"] = status.block_hash ? json(*status.block_hash) : json(nullptr);
    return j.dump(2);
}

namespace {

std::mutex& mempool_mutex()
{
    static std::mutex m;
    return m;
}

std::string trim(std::string s)
{
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

void check_txid(const std::string& hex, const Txid& expected)
{
    Transaction tx;
    try {
        tx = parse_transaction(hex);
    } catch (const Error& e) {
        throw Error(ErrorCode::TxidMismatch, "source returned bytes that do not parse for " + expected.hex() + ": " + e.what());
    }
    auto actual = compute_txid(tx);
    if (actual != expected)
        throw Error(ErrorCode::TxidMismatch, "requested " + expected.hex() + " but the returned bytes hash to " + actual.hex());
}

std::set<std::string> read_mempool(const fs::path& file)
{
    std::set<std::string> ids;
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line))
        if (auto t = trim(line); !t.empty())
            ids.insert(t);
    return ids;
}

/// Splits "https://host:port/base/path" into the client origin and path prefix.
struct Endpoint {
    std::string origin;
    std::string base_path;
};

Endpoint split_endpoint(const std::string& url)
{
    auto scheme_end = url.find("://");
    auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto path_start = url.find('/', host_start);
    Endpoint e;
    e.origin = url.substr(0, path_start);
    e.base_path = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!e.base_path.empty() && e.base_path.back() == '/')
        e.base_path.pop_back();
    return e;
}

class LiveSession {
public:
    explicit LiveSession(const ChainSource& src) : endpoint_(split_endpoint(*src.endpoint)), client_(endpoint_.origin)
    {
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(src.timeout);
        auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(src.timeout - secs);
        client_.set_connection_timeout(secs.count(), usecs.count());
        client_.set_read_timeout(secs.count(), usecs.count());
        client_.set_write_timeout(secs.count(), usecs.count());
    }

    httplib::Result get(const std::string& path) { return client_.Get(endpoint_.base_path + path); }
    httplib::Result post(const std::string& path, const std::string& body)
    {
        return client_.Post(endpoint_.base_path + path, body, "text/plain");
    }

    const std::string& origin() const noexcept { return endpoint_.origin; }

private:
    Endpoint endpoint_;
    httplib::Client client_;
};

httplib::Response require_response(httplib::Result res, const std::string& what)
{
    if (!res)
        throw Error(ErrorCode::TransportError, what + ": " + httplib::to_string(res.error()));
    return std::move(*res);
}

} // namespace

ChainClient::ChainClient(ChainSource source) : source_(std::move(source))
{
    if (source_.mode == ChainSource::Mode::live && (!source_.endpoint || source_.endpoint->empty()))
        throw Error(ErrorCode::InvalidDocument, "live chain source needs an endpoint");
    if (source_.mode == ChainSource::Mode::fixture && !source_.fixture_root)
        throw Error(ErrorCode::InvalidDocument, "fixture chain source needs a fixture root");
}

std::string ChainClient::get_raw_transaction(const Txid& txid) const
{
    std::string hex;
    if (source_.mode == ChainSource::Mode::fixture) {
        auto path = *source_.fixture_root / (txid.hex() + ".hex");
        if (!fs::exists(path))
            throw Error(ErrorCode::NotFound, "no fixture for " + txid.hex() + " under " + source_.fixture_root->string());
        hex = lower(trim(detail::read_text_file(path)));
    } else {
        LiveSession session(source_);
        auto res = require_response(session.get("/tx/" + txid.hex() + "/hex"), "GET tx hex from " + session.origin());
        if (res.status == 404)
            throw Error(ErrorCode::NotFound, "source has no transaction " + txid.hex());
        if (res.status != 200)
            throw Error(ErrorCode::TransportError, "GET tx hex returned HTTP " + std::to_string(res.status));
        hex = lower(trim(res.body));
    }
    check_txid(hex, txid);
    return hex;
}

TxStatus ChainClient::get_tx_status(const Txid& txid) const
{
    if (source_.mode == ChainSource::Mode::fixture) {
        auto path = *source_.fixture_root / (txid.hex() + ".status");
        if (fs::exists(path))
            return parse_status_json(detail::read_text_file(path));
        std::lock_guard lock(mempool_mutex());
        if (read_mempool(*source_.fixture_root / "mempool.txt").count(txid.hex()) != 0)
            return TxStatus{};
        throw Error(ErrorCode::NotFound, "no status fixture for " + txid.hex());
    }

    LiveSession session(source_);
    auto res = require_response(session.get("/tx/" + txid.hex() + "/status"), "GET tx status from " + session.origin());
    if (res.status == 404)
        throw Error(ErrorCode::NotFound, "source has no transaction " + txid.hex());
    if (res.status != 200)
        throw Error(ErrorCode::TransportError, "GET tx status returned HTTP " + std::to_string(res.status));

    TxStatus st;
    try {
        auto j = json::parse(res.body);
        if (!j.at("confirmed").get<bool>())
            return st;
        auto height = j.at("block_height").get<std::int64_t>();
        st.block_time = from_unix(j.at("block_time").get<std::int64_t>());
        st.block_hash = j.at("block_hash").get<std::string>();

        auto tip = require_response(session.get("/blocks/tip/height"), "GET tip height");
        if (tip.status != 200)
            throw Error(ErrorCode::TransportError, "GET tip height returned HTTP " + std::to_string(tip.status));
        auto tip_height = std::stoll(trim(tip.body));
        if (tip_height < height)
            throw Error(ErrorCode::TransportError, "tip height below the transaction's block height");
        st.confirmations = static_cast<std::uint32_t>(tip_height - height + 1);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::TransportError, std::string("unexpected status response: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::TransportError, "unexpected tip height response");
    }
    return st;
}

Txid ChainClient::broadcast(std::string_view hex) const
{
    Transaction tx;
    try {
        tx = parse_transaction(hex);
    } catch (const Error& e) {
        throw Error(ErrorCode::Rejected, std::string("not a transaction: ") + e.what());
    }
    auto txid = compute_txid(tx);
    auto canonical = serialize_hex(tx);

    if (source_.mode == ChainSource::Mode::fixture) {
        std::lock_guard lock(mempool_mutex());
        fs::create_directories(*source_.fixture_root);
        auto hex_path = *source_.fixture_root / (txid.hex() + ".hex");
        if (!fs::exists(hex_path))
            detail::write_file_atomic(hex_path, as_bytes(canonical + "\n"));
        auto pool = *source_.fixture_root / "mempool.txt";
        if (read_mempool(pool).count(txid.hex()) == 0 && !fs::exists(*source_.fixture_root / (txid.hex() + ".status"))) {
            std::ofstream out(pool, std::ios::app);
            out << txid.hex() << '\n';
        }
        return txid;
    }

    LiveSession session(source_);
    auto res = require_response(session.post("/tx", canonical), "POST tx to " + session.origin());
    if (res.status != 200)
        throw Error(ErrorCode::Rejected, "source refused the transaction (HTTP " + std::to_string(res.status) + "): " + trim(res.body));
    auto returned = lower(trim(res.body));
    if (returned != txid.hex())
        throw Error(ErrorCode::TxidMismatch, "source acknowledged " + returned + " for " + txid.hex());
    return txid;
}

} // namespace eaward
