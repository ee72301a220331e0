#include "iwlab/cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "iwlab/digest.hpp"
#include "json.hpp"

namespace iwlab {

namespace fs = std::filesystem;
using nlohmann::json;

std::string default_cache_dir() {
  if (const char* env = std::getenv("IWLAB_CACHE_DIR"); env && *env) return env;
  return ".iwlab-cache";
}

std::string record_digest(const CacheRecord& r) {
  std::ostringstream os;
  os << r.schema << '\n' << r.kind << '\n' << r.key << '\n' << r.precision << '\n';
  for (const auto& s : r.payload) os << s << '\n';
  return sha256_hex(os.str());
}

namespace {

json to_json(const CacheRecord& r) {
  return json{{"schema", r.schema}, {"kind", r.kind},           {"key", r.key},
              {"payload", r.payload}, {"precision", r.precision}, {"digest", r.digest}};
}

CacheRecord from_json(const json& j) {
  CacheRecord r;
  r.schema = j.at("schema").get<int>();
  r.kind = j.at("kind").get<std::string>();
  r.key = j.at("key").get<std::string>();
  r.payload = j.at("payload").get<std::vector<std::string>>();
  r.precision = j.at("precision").get<int>();
  r.digest = j.at("digest").get<std::string>();
  return r;
}

CacheRecord read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cache: cannot read " + path.string());
  return from_json(json::parse(in));
}

}  // namespace

Cache::Cache(std::string dir) : dir_(dir.empty() ? default_cache_dir() : std::move(dir)) {}

std::string Cache::path_for(const std::string& kind, const std::string& key) const {
  return (fs::path(dir_) / (sha256_hex(kind + "\n" + key).substr(0, 32) + ".json")).string();
}

void Cache::put(CacheRecord r) const {
  fs::create_directories(dir_);
  r.schema = kCacheSchema;
  r.digest = record_digest(r);
  const std::string path = path_for(r.kind, r.key);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << to_json(r).dump() << '\n';
  }
  fs::rename(tmp, path);
}

std::optional<CacheRecord> Cache::get(const std::string& kind, const std::string& key) const {
  const fs::path path = path_for(kind, key);
  if (!fs::exists(path)) return std::nullopt;
  CacheRecord r = read_file(path);
  if (r.schema != kCacheSchema)
    throw DomainError("cache: schema " + std::to_string(r.schema) + " in " + path.string() + ", expected " +
                      std::to_string(kCacheSchema));
  if (r.kind != kind || r.key != key) throw DomainError("cache: key collision in " + path.string());
  if (record_digest(r) != r.digest) throw DomainError("cache: digest mismatch in " + path.string());
  return r;
}

std::vector<std::string> Cache::files() const {
  std::vector<std::string> out;
  if (!fs::exists(dir_)) return out;
  for (const auto& e : fs::directory_iterator(dir_))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CacheCheck> Cache::verify() const {
  std::vector<CacheCheck> out;
  for (const auto& f : files()) {
    try {
      CacheRecord r = read_file(f);
      if (r.schema != kCacheSchema)
        out.push_back({f, false, "schema " + std::to_string(r.schema)});
      else if (record_digest(r) != r.digest)
        out.push_back({f, false, "digest mismatch"});
      else
        out.push_back({f, true, r.kind + " " + r.key});
    } catch (const std::exception& e) {
      out.push_back({f, false, std::string("unreadable: ") + e.what()});
    }
  }
  return out;
}

int Cache::prune() const {
  int removed = 0;
  for (const auto& c : verify())
    if (!c.ok && fs::remove(c.file)) ++removed;
  return removed;
}

std::string to_record(const VerificationReport& r, bool with_time) {
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back(json{{"key", x.key}, {"value", x.value}});
  json j{{"id", r.id},
         {"params",
          {{"p", r.params.p}, {"d", r.params.d}, {"n", r.params.n}, {"theta", r.params.theta}, {"reading", r.params.reading}}},
         {"characters", r.characters},
         {"status", to_string(r.status)},
         {"witnesses", w},
         {"notes", r.notes},
         {"precision", r.precision}};
  if (with_time) j["wall_ms"] = static_cast<long long>(r.wall_ms);
  return j.dump();
}

std::vector<std::string> payload_of(const PadicCyclo& x) {
  std::vector<std::string> out{"shift=" + std::to_string(x.shift())};
  for (const auto& c : x.coeffs()) out.push_back(to_string(c));
  return out;
}

std::vector<std::string> payload_of(const Cyclo& x) {
  std::vector<std::string> out{"m=" + std::to_string(x.modulus())};
  for (int k = 0; k < x.degree(); ++k) out.push_back(to_string(x.coeff(k)));
  return out;
}

}  // namespace iwlab
