#include "puzzlebench/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace puzzlebench {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: EVP_Digest failed");
  }
  static const char* hexdigits = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hexdigits[md[i] >> 4]);
    out.push_back(hexdigits[md[i] & 0x0F]);
  }
  return out;
}

}  // namespace puzzlebench
