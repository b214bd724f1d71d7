#include <fstream>
#include <map>
#include <sstream>

#include "dpoem/experiment.hpp"

#include <httplib.h>
#include <openssl/evp.h>

namespace dpoem {

namespace fs = std::filesystem;

namespace {

struct LockEntry {
  std::string sha256;
  std::size_t bytes = 0;
};

std::map<std::string, LockEntry> read_lock(const fs::path& path) {
  std::map<std::string, LockEntry> entries;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string name;
    LockEntry e;
    if (fields >> name >> e.sha256 >> e.bytes) entries[name] = e;
  }
  return entries;
}

void write_lock(const fs::path& path, const std::map<std::string, LockEntry>& entries) {
  std::string out;
  for (const auto& [name, e] : entries) out += name + " " + e.sha256 + " " + std::to_string(e.bytes) + "\n";
  write_file_atomic(path, out);
}

// Splits "scheme://host[:port]/path" into the client origin and the path.
std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw DataError(0, "base URL '" + url + "' has no scheme");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

FetchResult fetch_dataset(const std::string& name, const fs::path& out_dir, const std::string& base_url) {
  if (name != "mushrooms" && name != "a9a" && name != "w8a")
    throw DataError(0, "unknown dataset '" + name + "' (expected mushrooms, a9a or w8a)");

  std::string url = base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto [origin, prefix] = split_url(url + "/" + name);

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(300);
  const auto response = client.Get(prefix);
  if (!response)
    throw DataError(0, "download of " + origin + prefix + " failed: " + httplib::to_string(response.error()));
  if (response->status != 200)
    throw DataError(0, "download of " + origin + prefix + " returned HTTP " + std::to_string(response->status));

  FetchResult result;
  result.bytes = response->body.size();
  result.sha256 = sha256_hex(response->body);

  fs::create_directories(out_dir);
  const fs::path lock_path = out_dir / "datasets.lock";
  auto lock = read_lock(lock_path);
  if (const auto it = lock.find(name); it != lock.end() && it->second.sha256 != result.sha256)
    throw DataError(0, "checksum mismatch for '" + name + "': lock has " + it->second.sha256 +
                           ", download has " + result.sha256);

  result.path = out_dir / name;
  write_file_atomic(result.path, response->body);
  lock[name] = {result.sha256, result.bytes};
  write_lock(lock_path, lock);
  return result;
}

}  // namespace dpoem
