#ifndef DARKHOLE_IO_UTIL_HPP
#define DARKHOLE_IO_UTIL_HPP

#include <string>

namespace darkhole {

/// Writes content to path via a temporary file in the same directory plus
/// rename, so readers never observe a torn file. Throws IO_ERROR.
void write_file_atomic(const std::string &path, const std::string &content);

} // namespace darkhole

#endif
