#include "fileio.hpp"

#include "eaward/error.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>

namespace eaward::detail {

namespace fs = std::filesystem;

Bytes read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::NotFound, "cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_text_file(const fs::path& path)
{
    auto b = read_file(path);
    return std::string(b.begin(), b.end());
}

void write_file_atomic(const fs::path& path, ByteView data)
{
    static std::atomic<unsigned> counter{0};
    thread_local std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream name;
    name << '.' << path.filename().string() << ".tmp-" << std::hex << rng() << '-' << counter++;
    auto tmp = path.parent_path() / name.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot create " + tmp.string());
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw std::runtime_error("short write to " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

} // namespace eaward::detail
