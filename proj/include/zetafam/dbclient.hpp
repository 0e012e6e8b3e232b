#pragma once

// Number-field records from an LMFDB-style JSON API, with an on-disk cache
// and an offline fixture source.
//
// Wire format (one page):
//   {"data": [{"label": "2.0.4.1", "degree": 2, "disc_abs": 4, "disc_sign": -1,
//              "r2": 1, "class_number": 1, "regulator": 1.0,
//              "torsion_order": 4, "coeffs": [1, 0, 1]}, ...]}
// Pages are requested with _offset/_limit; a page shorter than _limit ends
// the listing.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>
#include <tuple>

#include <unistd.h>

#include "json.hpp"
#include "zetafam/classdata.hpp"
#include "zetafam/numberfield.hpp"

namespace zetafam {

struct FieldRecord {
  std::string label;
  unsigned degree = 0;
  BigInt discriminant;
  Signature signature;
  std::optional<std::uint64_t> h;
  std::optional<double> R;
  std::optional<std::uint64_t> w;
  ZPoly coeffs;  // ascending, monic

  friend bool operator==(const FieldRecord&, const FieldRecord&) = default;
};

/// Reasons a record fails the structural invariants, empty when valid.
inline std::string record_problem(const FieldRecord& r) {
  if (r.degree == 0) return "degree must be positive";
  if (r.signature.real + 2 * r.signature.complex != r.degree) return "r1 + 2 r2 != degree";
  if (boost::multiprecision::abs(r.discriminant) <= 1) return "|D| must exceed 1";
  if (r.coeffs.size() != r.degree + 1) return "polynomial length != degree + 1";
  if (r.coeffs.back() != 1) return "polynomial not monic";
  if (r.h && *r.h == 0) return "class number must be positive";
  if (r.R && !(*r.R > 0)) return "regulator must be positive";
  if (r.w && *r.w == 0) return "torsion order must be positive";
  return {};
}

struct QuerySpec {
  std::optional<unsigned> degree;
  std::uint64_t min_abs_disc = 0;
  std::uint64_t max_abs_disc = 0;  // 0: unbounded
  std::optional<int> disc_sign;
  std::optional<unsigned> r2;      // signature filter
  unsigned page_size = 100;
  std::uint64_t max_records = 1000;

  /// Quadratic fields with lo <= D <= hi (same sign on both ends).
  static QuerySpec quadratic_window(std::int64_t lo, std::int64_t hi) {
    if (lo > hi || (lo < 0) != (hi < 0)) throw validation_error("quadratic_window: bounds must share a sign");
    QuerySpec q;
    q.degree = 2;
    q.disc_sign = hi < 0 ? -1 : 1;
    q.min_abs_disc = static_cast<std::uint64_t>(hi < 0 ? -hi : lo);
    q.max_abs_disc = static_cast<std::uint64_t>(hi < 0 ? -lo : hi);
    return q;
  }
  static QuerySpec degree_filter(unsigned n) {
    QuerySpec q;
    q.degree = n;
    return q;
  }

  void validate() const {
    if (page_size < 1 || page_size > 1000) throw validation_error("query: page size must lie in [1, 1000]");
    if (max_records > 100000) throw validation_error("query: max records must not exceed 100000");
    if (max_abs_disc && min_abs_disc > max_abs_disc) throw validation_error("query: empty |D| range");
    if (disc_sign && *disc_sign != 1 && *disc_sign != -1) throw validation_error("query: disc_sign must be +1 or -1");
  }

  bool matches(const FieldRecord& r) const {
    if (degree && r.degree != *degree) return false;
    if (r2 && r.signature.complex != *r2) return false;
    if (disc_sign && (r.discriminant < 0 ? -1 : 1) != *disc_sign) return false;
    const BigInt a = boost::multiprecision::abs(r.discriminant);
    if (a < min_abs_disc) return false;
    if (max_abs_disc && a > max_abs_disc) return false;
    return true;
  }

  /// Canonical form; equal queries give equal strings.
  std::string normalized() const {
    std::ostringstream os;
    os << "degree=" << (degree ? std::to_string(*degree) : "*") << "&disc_abs=" << min_abs_disc << "-"
       << (max_abs_disc ? std::to_string(max_abs_disc) : "*") << "&disc_sign=" << (disc_sign ? std::to_string(*disc_sign) : "*")
       << "&r2=" << (r2 ? std::to_string(*r2) : "*") << "&page_size=" << page_size << "&max_records=" << max_records;
    return os.str();
  }

  /// Server-side filters and paging for one request.
  std::string request_query(std::uint64_t offset, unsigned limit) const {
    std::string q = "_format=json";
    if (degree) q += "&degree=i" + std::to_string(*degree);
    if (disc_sign) q += "&disc_sign=i" + std::to_string(*disc_sign);
    if (r2) q += "&r2=i" + std::to_string(*r2);
    q += "&_sort=disc_abs&_offset=" + std::to_string(offset) + "&_limit=" + std::to_string(limit);
    return q;
  }
};

// ---------------------------------------------------------------------------
// JSON mapping

inline nlohmann::ordered_json record_to_json(const FieldRecord& r) {
  nlohmann::ordered_json j;
  j["label"] = r.label;
  j["degree"] = r.degree;
  j["disc_abs"] = BigInt(boost::multiprecision::abs(r.discriminant)).str();
  j["disc_sign"] = r.discriminant < 0 ? -1 : 1;
  j["r2"] = r.signature.complex;
  j["class_number"] = r.h ? nlohmann::ordered_json(*r.h) : nlohmann::ordered_json();
  j["regulator"] = r.R ? nlohmann::ordered_json(*r.R) : nlohmann::ordered_json();
  j["torsion_order"] = r.w ? nlohmann::ordered_json(*r.w) : nlohmann::ordered_json();
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& c : r.coeffs) {
    if (boost::multiprecision::abs(c) < (BigInt(1) << 62))
      coeffs.push_back(c.convert_to<std::int64_t>());
    else
      coeffs.push_back(c.str());
  }
  j["coeffs"] = coeffs;
  return j;
}

namespace detail {

template <class Json>
BigInt json_integer(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return BigInt(v.template get<std::int64_t>());
  if (v.is_number_unsigned()) return BigInt(v.template get<std::uint64_t>());
  if (v.is_string()) {
    const auto s = v.template get<std::string>();
    if (!s.empty() && s.find_first_not_of("-0123456789") == std::string::npos && s != "-") {
      try {
        return BigInt(s);
      } catch (const std::exception&) {
      }
    }
  }
  throw decode_error(path, "expected an integer");
}

template <class Json>
const Json& json_member(const Json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw decode_error(path + "." + key, "missing field");
  return *it;
}

template <class Json>
std::optional<std::uint64_t> json_optional_count(const Json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  const BigInt v = json_integer(*it, path + "." + key);
  if (v < 0 || v > BigInt(std::numeric_limits<std::int64_t>::max())) throw decode_error(path + "." + key, "out of range");
  return v.template convert_to<std::uint64_t>();
}

}  // namespace detail

/// Decodes one record; throws decode_error naming the offending JSON path.
template <class Json>
FieldRecord record_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw decode_error(path, "expected an object");
  FieldRecord r;
  const auto& label = detail::json_member(j, "label", path);
  if (!label.is_string()) throw decode_error(path + ".label", "expected a string");
  r.label = label.template get<std::string>();
  const BigInt degree = detail::json_integer(detail::json_member(j, "degree", path), path + ".degree");
  if (degree < 0 || degree > 1000) throw decode_error(path + ".degree", "out of range");
  r.degree = degree.template convert_to<unsigned>();
  const BigInt disc_abs = detail::json_integer(detail::json_member(j, "disc_abs", path), path + ".disc_abs");
  const BigInt sign = detail::json_integer(detail::json_member(j, "disc_sign", path), path + ".disc_sign");
  if (sign != 1 && sign != -1) throw decode_error(path + ".disc_sign", "expected +1 or -1");
  r.discriminant = sign * disc_abs;
  const BigInt r2 = detail::json_integer(detail::json_member(j, "r2", path), path + ".r2");
  if (r2 < 0 || r2 > degree) throw decode_error(path + ".r2", "out of range");
  r.signature.complex = r2.template convert_to<unsigned>();
  r.signature.real = r.degree >= 2 * r.signature.complex ? r.degree - 2 * r.signature.complex : 0;
  r.h = detail::json_optional_count(j, "class_number", path);
  r.w = detail::json_optional_count(j, "torsion_order", path);
  if (const auto it = j.find("regulator"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) throw decode_error(path + ".regulator", "expected a number");
    r.R = it->template get<double>();
  }
  const auto& coeffs = detail::json_member(j, "coeffs", path);
  if (!coeffs.is_array()) throw decode_error(path + ".coeffs", "expected an array");
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    r.coeffs.push_back(detail::json_integer(coeffs[i], path + ".coeffs[" + std::to_string(i) + "]"));
  return r;
}

/// Records of one page body {"data": [...]}.
inline std::vector<FieldRecord> decode_page(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw decode_error("$", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw decode_error("$", "expected an object");
  const auto it = j.find("data");
  if (it == j.end() || !it->is_array()) throw decode_error("$.data", "expected an array");
  std::vector<FieldRecord> out;
  for (std::size_t i = 0; i < it->size(); ++i) out.push_back(record_from_json((*it)[i], "$.data[" + std::to_string(i) + "]"));
  return out;
}

// ---------------------------------------------------------------------------
// Descriptors

/// Degree-2 records become Quadratic(m); everything else Ingested.
inline FieldDescriptor to_descriptor(const FieldRecord& r) {
  if (auto problem = record_problem(r); !problem.empty()) throw validation_error(r.label + ": " + problem);
  const BigInt pdisc = discriminant(r.coeffs);
  if (pdisc == 0 || pdisc % r.discriminant != 0)
    throw validation_error(r.label + ": polynomial discriminant is not a multiple of the field discriminant");
  const BigInt ratio = pdisc / r.discriminant;
  const BigInt root = boost::multiprecision::sqrt(ratio < 0 ? BigInt(0) : ratio);
  if (ratio <= 0 || root * root != ratio)
    throw validation_error(r.label + ": disc(f)/D_K is not a square");
  if (real_root_count(r.coeffs) != r.signature.real)
    throw validation_error(r.label + ": signature disagrees with the real roots of the polynomial");
  if (r.degree == 2) {
    if (boost::multiprecision::abs(r.discriminant) > (BigInt(1) << 62)) throw validation_error(r.label + ": discriminant too large");
    const auto D = r.discriminant.convert_to<std::int64_t>();
    if (!is_fundamental_discriminant(D)) throw validation_error(r.label + ": not a fundamental discriminant");
    return FieldDescriptor::quadratic_from_discriminant(D);
  }
  Ingested k;
  k.label = r.label;
  k.degree = r.degree;
  k.discriminant = r.discriminant;
  k.signature = r.signature;
  k.poly = r.coeffs;
  k.class_number = r.h;
  k.regulator = r.R;
  k.roots_of_unity = r.w;
  return FieldDescriptor::ingested(std::move(k));
}

/// Class data of a record, if complete.
inline std::optional<ClassData> record_class_data(const FieldRecord& r) {
  if (!r.h || !r.R || !r.w) return std::nullopt;
  return ClassData{*r.h, *r.R, *r.w, ClassSource::ingested};
}

// ---------------------------------------------------------------------------
// Transports

struct HttpResponse {
  int status = 0;
  std::string body;
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// GET `query` (without leading '?') against the configured endpoint.
  virtual HttpResponse get(const std::string& query) = 0;
  /// Whether requests leave the process.
  virtual bool networked() const { return true; }
};

namespace detail {

inline std::map<std::string, std::string> parse_query(const std::string& q) {
  std::map<std::string, std::string> out;
  std::istringstream is(q);
  std::string part;
  while (std::getline(is, part, '&')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) out[part] = "";
    else out[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return out;
}

}  // namespace detail

/// Answers API requests from the bundled fixture files (*.json pages).
class FixtureTransport : public Transport {
 public:
  explicit FixtureTransport(std::filesystem::path dir) : dir_(std::move(dir)) {}

  bool networked() const override { return false; }

  HttpResponse get(const std::string& query) override {
    std::call_once(loaded_, [this] { load(); });
    if (!error_.empty()) throw transport_error(error_);
    const auto params = detail::parse_query(query);
    auto int_param = [&](const char* key) -> std::optional<long long> {
      const auto it = params.find(key);
      if (it == params.end()) return std::nullopt;
      std::string v = it->second;
      if (!v.empty() && v[0] == 'i') v = v.substr(1);
      try {
        return std::stoll(v);
      } catch (const std::exception&) {
        throw transport_error("fixture transport: bad parameter " + std::string(key) + "=" + it->second);
      }
    };
    const auto degree = int_param("degree");
    const auto sign = int_param("disc_sign");
    const auto r2 = int_param("r2");
    const auto offset = int_param("_offset").value_or(0);
    const auto limit = int_param("_limit").value_or(100);
    nlohmann::ordered_json page;
    page["data"] = nlohmann::ordered_json::array();
    long long index = 0;
    for (const auto& r : records_) {
      if (degree && static_cast<long long>(r.degree) != *degree) continue;
      if (sign && (r.discriminant < 0 ? -1 : 1) != *sign) continue;
      if (r2 && static_cast<long long>(r.signature.complex) != *r2) continue;
      if (index++ < offset) continue;
      if (static_cast<long long>(page["data"].size()) >= limit) break;
      page["data"].push_back(record_to_json(r));
    }
    return {200, page.dump()};
  }

 private:
  void load() {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir_, ec)) {
      error_ = "fixture directory " + dir_.string() + " is not readable (offline mode, cold cache)";
      return;
    }
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir_))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::ifstream in(f);
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        for (auto& r : decode_page(ss.str())) records_.push_back(std::move(r));
      } catch (const decode_error& e) {
        throw decode_error(f.filename().string() + ":" + e.path(), e.what());
      }
    }
    std::stable_sort(records_.begin(), records_.end(), [](const FieldRecord& a, const FieldRecord& b) {
      const BigInt da = boost::multiprecision::abs(a.discriminant), db = boost::multiprecision::abs(b.discriminant);
      return std::tie(a.degree, da, a.label) < std::tie(b.degree, db, b.label);
    });
  }

  std::filesystem::path dir_;
  std::once_flag loaded_;
  std::vector<FieldRecord> records_;
  std::string error_;
};

// ---------------------------------------------------------------------------
// Configuration

struct ClientConfig {
  std::string base_url = "https://www.lmfdb.org/api/nf_fields/";
  std::string cache_dir = ".zetafam-cache";
  bool offline = true;
  double timeout_seconds = 30.0;
  std::string fixture_dir =
#ifdef ZETAFAM_FIXTURE_DIR
      ZETAFAM_FIXTURE_DIR;
#else
      "data/fixtures";
#endif

  static constexpr const char* kEnvPrefix = "ZETAFAM_";

  void set(const std::string& key, const std::string& value) {
    if (key == "base_url") base_url = value;
    else if (key == "cache_dir") cache_dir = value;
    else if (key == "fixture_dir") fixture_dir = value;
    else if (key == "offline") {
      if (value == "1" || value == "true" || value == "yes" || value == "on") offline = true;
      else if (value == "0" || value == "false" || value == "no" || value == "off") offline = false;
      else throw validation_error("config: offline must be true or false, got '" + value + "'");
    } else if (key == "timeout_seconds") {
      try {
        std::size_t used = 0;
        timeout_seconds = std::stod(value, &used);
        if (used != value.size() || !(timeout_seconds > 0)) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw validation_error("config: timeout_seconds must be a positive number, got '" + value + "'");
      }
    } else {
      throw validation_error("config: unknown key '" + key + "'");
    }
  }

  /// key = value lines; '#' starts a comment.
  void load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("config: cannot read " + path.string());
    std::string line;
    unsigned n = 0;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
      ++n;
      if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw validation_error("config: line " + std::to_string(n) + " is not key = value");
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }

  /// ZETAFAM_BASE_URL, ZETAFAM_CACHE_DIR, ZETAFAM_OFFLINE, ZETAFAM_TIMEOUT_SECONDS, ZETAFAM_FIXTURE_DIR.
  void apply_environment() {
    for (const char* key : {"base_url", "cache_dir", "offline", "timeout_seconds", "fixture_dir"}) {
      std::string var = kEnvPrefix;
      for (const char* c = key; *c; ++c) var += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
      if (const char* v = std::getenv(var.c_str())) set(key, v);
    }
  }

  /// Defaults, then the file (if any), then the environment.
  static ClientConfig resolve(const std::optional<std::filesystem::path>& file) {
    ClientConfig c;
    if (file) c.load_file(*file);
    c.apply_environment();
    return c;
  }
};

// ---------------------------------------------------------------------------
// Client

struct FetchResult {
  std::vector<FieldRecord> records;
  bool truncated = false;
  bool from_cache = false;
  std::size_t fetched = 0;  // records received before validation
  std::size_t dropped = 0;  // records failing the structural invariants
  std::vector<std::string> warnings;
};

inline constexpr const char* kCacheFormat = "zetafam-cache/1";

class DbClient {
 public:
  explicit DbClient(ClientConfig config, std::shared_ptr<Transport> network = nullptr)
      : config_(std::move(config)), network_(std::move(network)) {
    if (config_.offline || !network_) fixtures_ = std::make_shared<FixtureTransport>(config_.fixture_dir);
  }

  const ClientConfig& config() const { return config_; }

  /// Cached result or records from the source; results are cached before return.
  FetchResult fetch(const QuerySpec& query) {
    query.validate();
    if (auto hit = cache_lookup(query)) return *hit;
    FetchResult out;
    if (query.max_records > 0) {
      Transport& source = config_.offline || !network_ ? *fixtures_ : *network_;
      std::uint64_t offset = 0;
      bool done = false;
      while (!done && out.records.size() < query.max_records) {
        const auto limit = static_cast<unsigned>(std::min<std::uint64_t>(query.page_size, query.max_records - out.records.size()));
        if (source.networked()) ++network_requests_;
        const HttpResponse resp = source.get(query.request_query(offset, limit));
        if (resp.status != 200) throw transport_error("HTTP status " + std::to_string(resp.status));
        const auto page = decode_page(resp.body);
        offset += page.size();
        out.fetched += page.size();
        for (const auto& r : page) {
          if (query.max_abs_disc && boost::multiprecision::abs(r.discriminant) > query.max_abs_disc) {
            done = true;  // listing is sorted by |D|
            break;
          }
          if (!query.matches(r)) continue;
          if (auto problem = record_problem(r); !problem.empty()) {
            ++out.dropped;
            out.warnings.push_back(r.label + ": " + problem);
            continue;
          }
          out.records.push_back(r);
          if (out.records.size() >= query.max_records) break;
        }
        if (page.size() < limit) done = true;
      }
      out.truncated = !done && out.records.size() >= query.max_records;
    }
    store(query, out);
    return out;
  }

  /// Cached result for the query; a corrupt entry is deleted and reported as a miss.
  std::optional<FetchResult> cache_lookup(const QuerySpec& query) const {
    const auto path = cache_path(query);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string header, key, body;
    std::getline(in, header);
    std::getline(in, key);
    std::stringstream rest;
    rest << in.rdbuf();
    body = rest.str();
    in.close();
    try {
      if (header != kCacheFormat) throw decode_error("cache", "format version mismatch");
      if (key != query.normalized()) throw decode_error("cache", "key mismatch");
      const auto j = nlohmann::json::parse(body);
      FetchResult out;
      out.from_cache = true;
      out.truncated = j.at("truncated").get<bool>();
      out.fetched = j.at("fetched").get<std::size_t>();
      out.dropped = j.at("dropped").get<std::size_t>();
      const auto& recs = j.at("records");
      for (std::size_t i = 0; i < recs.size(); ++i) out.records.push_back(record_from_json(recs[i], "$.records[" + std::to_string(i) + "]"));
      return out;
    } catch (const std::exception& e) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
      ++invalidations_;
      std::cerr << "zetafam: invalidated corrupt cache entry " << path.string() << " (" << e.what() << ")\n";
      return std::nullopt;
    }
  }

  std::filesystem::path cache_path(const QuerySpec& query) const {
    // FNV-1a over the normalized query
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : query.normalized()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(h));
    return std::filesystem::path(config_.cache_dir) / name;
  }

  std::size_t network_requests() const { return network_requests_; }
  std::size_t cache_invalidations() const { return invalidations_; }

 private:
  void store(const QuerySpec& query, const FetchResult& r) const {
    std::filesystem::create_directories(config_.cache_dir);
    nlohmann::ordered_json j;
    j["truncated"] = r.truncated;
    j["fetched"] = r.fetched;
    j["dropped"] = r.dropped;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& rec : r.records) j["records"].push_back(record_to_json(rec));
    const auto path = cache_path(query);
    static std::atomic<unsigned> counter{0};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << kCacheFormat << '\n' << query.normalized() << '\n' << j.dump() << '\n';
      if (!out) throw transport_error("cache: cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  ClientConfig config_;
  std::shared_ptr<Transport> network_;
  std::shared_ptr<FixtureTransport> fixtures_;
  std::size_t network_requests_ = 0;
  mutable std::size_t invalidations_ = 0;
};

// ---------------------------------------------------------------------------
// Ingestion report

struct IngestReport {
  std::size_t fetched = 0;
  std::size_t validated = 0;  // class data consistent with the analytic formula
  std::size_t flagged = 0;    // inconsistent data or descriptor mismatch
  std::size_t unchecked = 0;  // no analytic check available (degree > 2 or missing data)
  std::size_t dropped = 0;
  bool truncated = false;
  std::vector<std::string> messages;
};

/// Validates every record's descriptor and class data.
inline IngestReport assess(const FetchResult& result) {
  IngestReport rep;
  rep.fetched = result.fetched;
  rep.dropped = result.dropped;
  rep.truncated = result.truncated;
  for (const auto& r : result.records) {
    try {
      const FieldInvariants inv = field_invariants(to_descriptor(r));
      if (inv.discriminant != r.discriminant || inv.signature != r.signature)
        throw validation_error("recomputed discriminant or signature disagrees with the record");
      const auto cd = record_class_data(r);
      if (!cd) {
        ++rep.unchecked;
        continue;
      }
      const auto v = validate_class_data(inv, *cd);
      if (v.status == ValidationStatus::validated) ++rep.validated;
      else if (v.status == ValidationStatus::flagged) {
        ++rep.flagged;
        rep.messages.push_back(r.label + ": " + v.reason);
      } else {
        ++rep.unchecked;
      }
    } catch (const std::exception& e) {
      ++rep.flagged;
      rep.messages.push_back(r.label + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace zetafam
