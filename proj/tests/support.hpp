#ifndef EAWARD_TESTS_SUPPORT_HPP
#define EAWARD_TESTS_SUPPORT_HPP

#include <eaward/crypto.hpp>
#include <eaward/error.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

namespace support {

inline constexpr int property_cases = 200;

// Fixed seed so failures reproduce; override with EAWARD_TEST_SEED.
inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine = [] {
        std::uint64_t seed = 0x5eed'e4a7'd000'0001ULL;
        if (const char* s = std::getenv("EAWARD_TEST_SEED")) seed = std::stoull(s);
        return std::mt19937_64(seed);
    }();
    return engine;
}

inline std::size_t uniform(std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng());
}

inline eaward::Bytes random_bytes(std::size_t n)
{
    eaward::Bytes out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(uniform(0, 255));
    return out;
}

inline std::string random_string(std::size_t n, std::string_view alphabet)
{
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += alphabet[uniform(0, alphabet.size() - 1)];
    return out;
}

inline constexpr std::string_view alnum = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
inline constexpr std::string_view base58_alphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
inline constexpr std::string_view base64_alphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

inline eaward::PrivateKey random_key()
{
    for (;;) {
        try {
            return eaward::PrivateKey::from_bytes(random_bytes(32));
        } catch (const eaward::Error&) {
        }
    }
}

class TempDir {
public:
    TempDir()
    {
        path_ = std::filesystem::temp_directory_path() /
                ("eaward-test-" + std::to_string(::getpid()) + "-" + std::to_string(uniform(0, 1ULL << 40)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace support

#define EXPECT_EAWARD_ERROR(stmt, expected)                                                 \
    do {                                                                                    \
        try {                                                                               \
            (void)(stmt);                                                                       \
            ADD_FAILURE() << "expected " << eaward::to_string(expected) << ", nothing thrown"; \
        } catch (const eaward::Error& e_) {                                                 \
            EXPECT_EQ(e_.code(), expected) << e_.what();                                    \
        }                                                                                   \
    } while (0)

#endif
