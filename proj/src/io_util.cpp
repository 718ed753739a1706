#include "darkhole/io_util.hpp"

#include <cstdio>
#include <fstream>
#include <random>

#include "darkhole/errors.hpp"

namespace darkhole {

void write_file_atomic(const std::string &path, const std::string &content)
{
    static std::mt19937_64 rng{std::random_device{}()};
    std::string tmp = path + ".tmp" + std::to_string(rng() & 0xffffff);
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw Error(ErrorCode::IO_ERROR, "cannot create '" + tmp + "'");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) {
            std::remove(tmp.c_str());
            throw Error(ErrorCode::IO_ERROR, "short write to '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error(ErrorCode::IO_ERROR,
                    "cannot rename '" + tmp + "' to '" + path + "'");
    }
}

} // namespace darkhole
