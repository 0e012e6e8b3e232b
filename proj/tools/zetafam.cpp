#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zetafam/http_transport.hpp"
#include "zetafam/zetafam.hpp"

namespace {

using namespace zetafam;

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success (including runs with flagged or failed rows)\n"
    "  1  unexpected internal error\n"
    "  2  invalid arguments, field description or configuration\n"
    "  3  experiment driver error\n"
    "  4  transport failure (network, or missing fixtures with a cold cache)\n";

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kDriver = 3, kTransport = 4 };

/// Usage problems detected after CLI11 parsing.
struct usage_error : validation_error {
  using validation_error::validation_error;
};

ZPoly parse_coefficients(const std::string& text) {
  ZPoly out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.emplace_back(item);
    } catch (const std::exception&) {
      throw usage_error("bad coefficient '" + item + "'");
    }
  }
  return out;
}

Cplx parse_s(const std::string& text) {
  static const std::regex re(R"(\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(?:([-+])\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)?\s*i)?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw usage_error("cannot parse s = '" + text + "'");
  double im = 0.0;
  if (m[2].matched) {
    im = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (m[2] == "-") im = -im;
  }
  return {std::stod(m[1].str()), im};
}

/// phi<q>=v, phiR=v, phiC=v entries, comma separated or repeated.
TVInvariants parse_synthetic(const std::vector<std::string>& items) {
  std::map<std::uint64_t, double> phi;
  double phi_R = 0.0, phi_C = 0.0;
  static const std::regex re(R"(phi(R|C|[0-9]+)=([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))");
  for (const auto& group : items) {
    std::stringstream ss(group);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::smatch m;
      if (!std::regex_match(item, m, re)) throw usage_error("bad synthetic entry '" + item + "' (expected phi<q>=v, phiR=v or phiC=v)");
      const double v = std::stod(m[2].str());
      if (m[1] == "R") phi_R = v;
      else if (m[1] == "C") phi_C = v;
      else phi[std::stoull(m[1].str())] = v;
    }
  }
  return TVInvariants::synthetic(std::move(phi), phi_R, phi_C);
}

ClientConfig load_config(const std::string& path, std::optional<bool> offline) {
  ClientConfig cfg = ClientConfig::resolve(path.empty() ? std::nullopt : std::optional<std::filesystem::path>(path));
  if (offline) cfg.offline = *offline;
  return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + out_path);
}

// ---------------------------------------------------------------------------
// field-info

struct FieldInfoArgs {
  std::optional<std::int64_t> quadratic;
  std::optional<std::int64_t> discriminant;
  std::optional<std::uint32_t> cyclotomic;
  std::string monogenic;
  std::string label;
  std::uint64_t bound = 30;
};

FieldDescriptor field_from_label(const std::string& label, const ClientConfig& cfg) {
  const auto dot = label.find('.');
  unsigned degree = 0;
  try {
    degree = static_cast<unsigned>(std::stoul(label.substr(0, dot)));
  } catch (const std::exception&) {
    throw usage_error("bad label '" + label + "'");
  }
  QuerySpec q = QuerySpec::degree_filter(degree);
  q.max_records = 100000;
  q.page_size = 1000;
  DbClient client = make_client(cfg);
  for (const auto& r : client.fetch(q).records)
    if (r.label == label) return to_descriptor(r);
  throw usage_error("no record with label " + label);
}

int cmd_field_info(const FieldInfoArgs& a, const ClientConfig& cfg) {
  FieldDescriptor F = [&] {
    if (a.quadratic) return FieldDescriptor::quadratic(*a.quadratic);
    if (a.discriminant) return FieldDescriptor::quadratic_from_discriminant(*a.discriminant);
    if (a.cyclotomic) return FieldDescriptor::cyclotomic(*a.cyclotomic);
    if (!a.monogenic.empty()) return FieldDescriptor::monogenic(parse_coefficients(a.monogenic));
    if (!a.label.empty()) return field_from_label(a.label, cfg);
    throw usage_error("one of --quadratic, --disc, --cyclotomic, --monogenic, --label is required");
  }();
  const FieldInvariants inv = field_invariants(F);
  std::ostringstream os;
  os << "field=" << F.id() << '\n';
  os << "D=" << inv.discriminant.str() << (inv.discriminant_exact ? "" : " (polynomial discriminant; index unresolved)")
     << ", signature=(" << inv.signature.real << ',' << inv.signature.complex << ")\n";
  os << "n=" << inv.degree << '\n';
  os << "g=" << format_double(inv.genus) << '\n';
  const auto profile = splitting_profile(F, a.bound);
  for (const auto& [q, c] : profile.counts)
    if (c) os << "Phi[" << q << "]=" << c << '\n';
  if (!profile.excluded_primes.empty()) {
    os << "excluded_primes=";
    for (std::size_t i = 0; i < profile.excluded_primes.size(); ++i) os << (i ? "," : "") << profile.excluded_primes[i];
    os << '\n';
  }
  if (F.is_quadratic() || F.as<Ingested>()) {
    try {
      const ClassData cd = class_data(F);
      const ResidueValue kappa = residue_kappa(inv, cd);
      os << "h=" << cd.h << "\nR=" << format_double(cd.R) << "\nw=" << cd.w << "\nkappa=" << format_double(kappa.kappa) << '\n';
      if (inv.genus > 0) os << "log(hR)/g=" << format_double(brauer_siegel_ratio(inv, cd)) << '\n';
    } catch (const domain_error& e) {
      os << "class data unavailable: " << e.what() << '\n';
    }
  }
  try {
    const ZetaEngine engine(F);
    const auto ek = euler_kronecker(engine);
    os << "gamma_K=" << format_double(ek.value) << '\n';
    if (!F.is_quadratic()) os << "kappa=" << format_double(engine.residue()) << '\n';
  } catch (const unsupported_kind&) {
  }
  std::cout << os.str();
  return kOk;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
  std::string theorem = "main1";
  std::string family = "imag-quadratic";
  std::size_t N = 100;
  std::string s = "1.5";
  std::uint64_t X = 100;
  std::string format = "csv";
  std::string out;
  std::vector<std::string> synthetic;
  std::optional<std::uint64_t> min_abs_disc, max_abs_disc;
  std::vector<std::uint32_t> split_primes;
  std::uint32_t prime = 3;
  unsigned min_exponent = 1;
  std::optional<unsigned> degree;
  unsigned jobs = default_jobs();
  double precision = kDefaultPrecision;
};

FamilySpec build_family(const ExperimentArgs& a, const ClientConfig& cfg) {
  FamilySpec spec;
  spec.N = a.N;
  if (!a.synthetic.empty()) {
    spec.generator = Synthetic{parse_synthetic(a.synthetic)};
    return spec;
  }
  const std::uint64_t hi = a.max_abs_disc.value_or(std::numeric_limits<std::int64_t>::max());
  if (a.family == "imag-quadratic") {
    spec.generator = ImaginaryQuadratic{a.min_abs_disc.value_or(3), hi};
  } else if (a.family == "real-quadratic") {
    spec.generator = RealQuadratic{a.min_abs_disc.value_or(5), hi};
  } else if (a.family == "split-imag-quadratic" || a.family == "split-real-quadratic") {
    if (a.split_primes.empty()) throw usage_error("--split is required for " + a.family);
    spec.generator = SplitConstrained{a.family == "split-imag-quadratic", a.split_primes, a.min_abs_disc.value_or(3), hi};
  } else if (a.family == "cyclotomic") {
    spec.generator = CyclotomicPrimePower{a.prime, a.min_exponent};
  } else if (a.family == "ingested") {
    QuerySpec q;
    q.degree = a.degree;
    q.min_abs_disc = a.min_abs_disc.value_or(0);
    q.max_abs_disc = a.max_abs_disc.value_or(0);
    q.max_records = std::min<std::uint64_t>(100000, std::max<std::uint64_t>(a.N, 1));
    DbClient client = make_client(cfg);
    IngestedFamily fam;
    for (const auto& r : client.fetch(q).records) {
      try {
        fam.fields.push_back(to_descriptor(r));
      } catch (const validation_error& e) {
        std::cerr << "zetafam: skipping " << e.what() << '\n';
      }
    }
    spec.generator = std::move(fam);
  } else {
    throw usage_error("unknown family '" + a.family + "'");
  }
  return spec;
}

int cmd_experiment(const ExperimentArgs& a, const ClientConfig& cfg) {
  if (a.format != "csv" && a.format != "json") throw usage_error("--format must be csv or json");
  if (a.N < 1) throw usage_error("-N must be at least 1");
  const Cplx s = parse_s(a.s);
  if (a.theorem == "main1" && !(s.real() > 0.5 && s != Cplx(1.0, 0.0)))
    throw usage_error("main1 needs Re s > 1/2 and s != 1 (got s = " + a.s + ")");
  if (a.theorem != "main1" && a.theorem != "main2" && a.theorem != "ek" && a.theorem != "tvz")
    throw usage_error("--theorem must be one of tvz, main1, main2, ek");
  const FamilySpec spec = build_family(a, cfg);
  DriverOptions opt;
  opt.X = a.X;
  opt.jobs = a.jobs;
  opt.precision = a.precision;
  ExperimentTable table;
  try {
    if (a.theorem == "main1") table = run_theorem1(spec, s, opt);
    else if (a.theorem == "main2") table = run_theorem2(spec, opt);
    else if (a.theorem == "ek") table = run_ek(spec, opt);
    else table = run_brauer_siegel(spec, opt);
  } catch (const transport_error&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "zetafam: experiment failed: " << e.what() << '\n';
    return kDriver;
  }
  emit(a.format == "csv" ? table.to_csv() : table.to_json().dump(2) + "\n", a.out);
  const auto& m = table.metadata;
  std::cerr << "theorem=" << m.theorem << " family=" << m.family << " rows=" << table.rows().size()
            << " prediction=" << format_optional(m.family_prediction)
            << " terminal_residual=" << format_optional(table.terminal_residual()) << " excluded=" << m.excluded
            << " failed=" << m.failed << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestArgs {
  std::optional<unsigned> degree;
  std::optional<int> disc_sign;
  std::optional<unsigned> r2;
  std::uint64_t min_abs_disc = 0, max_abs_disc = 0;
  unsigned page_size = 100;
  std::uint64_t max_records = 1000;
  bool verbose = false;
};

int cmd_ingest(const IngestArgs& a, const ClientConfig& cfg) {
  QuerySpec q;
  q.degree = a.degree;
  q.disc_sign = a.disc_sign;
  q.r2 = a.r2;
  q.min_abs_disc = a.min_abs_disc;
  q.max_abs_disc = a.max_abs_disc;
  q.page_size = a.page_size;
  q.max_records = a.max_records;
  q.validate();
  DbClient client = make_client(cfg);
  const FetchResult result = client.fetch(q);
  const IngestReport rep = assess(result);
  std::cout << rep.fetched << " fetched, " << rep.validated << " validated, " << rep.flagged << " flagged, " << rep.unchecked
            << " unchecked, " << rep.dropped << " dropped" << (rep.truncated ? " (truncated at max-records)" : "") << '\n';
  std::cout << "records=" << result.records.size() << " source=" << (result.from_cache ? "cache" : cfg.offline ? "fixtures" : "network")
            << " network_requests=" << client.network_requests() << '\n';
  if (a.verbose) {
    for (const auto& w : result.warnings) std::cout << "dropped: " << w << '\n';
    for (const auto& msg : rep.messages) std::cout << "flagged: " << msg << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Number-field invariants and family experiments", "zetafam"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  std::string config_path;
  std::optional<bool> offline;
  app.add_option("--config", config_path, "key = value config file (base_url, cache_dir, offline, timeout_seconds, fixture_dir)")
      ->check(CLI::ExistingFile);
  auto* on = app.add_flag_callback("--offline", [&] { offline = true; }, "use bundled fixtures, never the network");
  auto* off = app.add_flag_callback("--online", [&] { offline = false; }, "query the configured endpoint");
  on->excludes(off);

  FieldInfoArgs fi;
  auto* info = app.add_subcommand("field-info", "report invariants of one field");
  auto* fq = info->add_option("--quadratic", fi.quadratic, "Q(sqrt m), m squarefree");
  auto* fd = info->add_option("--disc", fi.discriminant, "quadratic field of fundamental discriminant D");
  auto* fc = info->add_option("--cyclotomic", fi.cyclotomic, "Q(zeta_n)");
  auto* fm = info->add_option("--monogenic", fi.monogenic, "Z[x]/(f), coefficients c0,c1,...,cn (constant first)");
  auto* fl = info->add_option("--label", fi.label, "record label from the database, e.g. 3.3.49.1");
  for (auto* a : {fq, fd, fc, fm, fl})
    for (auto* b : {fq, fd, fc, fm, fl})
      if (a != b) a->excludes(b);
  info->add_option("--bound", fi.bound, "splitting profile bound X")->check(CLI::Range(2ull, 10000000ull));

  ExperimentArgs ex;
  auto* exp = app.add_subcommand("experiment", "run a family experiment and write its table");
  exp->add_option("--theorem", ex.theorem, "tvz, main1, main2 or ek")->check(CLI::IsMember({"tvz", "main1", "main2", "ek"}));
  auto* fam = exp->add_option("--family", ex.family,
                              "imag-quadratic, real-quadratic, split-imag-quadratic, split-real-quadratic, cyclotomic, ingested");
  exp->add_option("-N", ex.N, "number of fields");
  exp->add_option("-s", ex.s, "evaluation point for main1, e.g. 1.5 or 0.75+2i");
  exp->add_option("-X", ex.X, "splitting bound for invariant estimation")->check(CLI::Range(2ull, 10000000ull));
  exp->add_option("--format", ex.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  exp->add_option("--out", ex.out, "output path (default stdout)");
  auto* syn = exp->add_option("--synthetic", ex.synthetic, "synthetic invariants phi<q>=v,phiR=v,phiC=v");
  syn->excludes(fam);
  exp->add_option("--min-abs-disc", ex.min_abs_disc, "smallest |D|");
  exp->add_option("--max-abs-disc", ex.max_abs_disc, "largest |D|");
  exp->add_option("--split", ex.split_primes, "primes that must split (split families)")->delimiter(',');
  exp->add_option("--prime", ex.prime, "p for the cyclotomic family")->check(CLI::Range(2u, 1u << 20));
  exp->add_option("--min-exponent", ex.min_exponent, "first exponent for the cyclotomic family");
  exp->add_option("--degree", ex.degree, "degree filter for the ingested family");
  exp->add_option("--jobs", ex.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  exp->add_option("--precision", ex.precision, "absolute target for series evaluation")->check(CLI::Range(1e-15, 1e-3));

  IngestArgs ig;
  auto* ing = app.add_subcommand("ingest", "fetch database records into the cache and validate them");
  ing->add_option("--degree", ig.degree, "field degree");
  ing->add_option("--disc-sign", ig.disc_sign, "+1 or -1")->check(CLI::IsMember({-1, 1}));
  ing->add_option("--r2", ig.r2, "number of complex places");
  ing->add_option("--min-abs-disc", ig.min_abs_disc, "smallest |D|");
  ing->add_option("--max-abs-disc", ig.max_abs_disc, "largest |D| (0: unbounded)");
  ing->add_option("--page-size", ig.page_size, "records per request (1..1000)");
  ing->add_option("--max-records", ig.max_records, "stop after this many records (<= 100000)");
  ing->add_flag("--verbose", ig.verbose, "list dropped and flagged records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const ClientConfig cfg = load_config(config_path, offline);
    if (*info) return cmd_field_info(fi, cfg);
    if (*exp) return cmd_experiment(ex, cfg);
    return cmd_ingest(ig, cfg);
  } catch (const transport_error& e) {
    std::cerr << "zetafam: transport: " << e.what() << '\n';
    return kTransport;
  } catch (const decode_error& e) {
    std::cerr << "zetafam: transport: undecodable response: " << e.what() << '\n';
    return kTransport;
  } catch (const validation_error& e) {
    std::cerr << "zetafam: " << e.what() << '\n';
    return kUsage;
  } catch (const domain_error& e) {
    std::cerr << "zetafam: " << e.what() << '\n';
    return kUsage;
  } catch (const empty_family_error& e) {
    std::cerr << "zetafam: " << e.what() << '\n';
    return kDriver;
  } catch (const std::exception& e) {
    std::cerr << "zetafam: internal error: " << e.what() << '\n';
    return kInternal;
  }
}
