#include "hg/cli.hpp"

#include "hg/amenability.hpp"
#include "hg/dunkl_ramirez.hpp"
#include "hg/groups.hpp"
#include "hg/ideals.hpp"
#include "hg/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace hg::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

const std::vector<std::string> kKinds = {"file",      "dunkl-ramirez", "dunkl-ramirez-dual",
                                         "jacobi",    "chebyshev",     "legendre",
                                         "conjugacy"};

void add_family_options(CLI::App& cmd, FamilySpec& spec, bool positional_file) {
  cmd.add_option("--family", spec.kind, "family kind")->check(CLI::IsMember(kKinds));
  if (positional_file) cmd.add_option("file", spec.path, "hypergroup JSON file");
  cmd.add_option("--a", spec.a, "Dunkl-Ramirez parameter in (0, 1/2]");
  cmd.add_option("--N", spec.N, "truncation size or degree bound");
  cmd.add_option("--alpha", spec.alpha, "Jacobi alpha");
  cmd.add_option("--beta", spec.beta, "Jacobi beta");
  cmd.add_option("--group", spec.group, "builtin group such as S4, D_4, Q8");
  cmd.add_option("--group-csv", spec.group_csv, "group multiplication table as CSV");
}

// A bare file argument selects the file kind unless another kind was named.
void normalize(FamilySpec& spec) {
  if (spec.kind == "chebyshev") {
    spec.kind = "jacobi";
    spec.alpha = spec.beta = -0.5;
  } else if (spec.kind == "legendre") {
    spec.kind = "jacobi";
    spec.alpha = spec.beta = 0.0;
  }
}

TablePtr finite_table(const FamilySpec& spec) {
  if (spec.kind == "file") {
    auto file = read_hypergroup_file(spec.path);
    return build_hypergroup(std::move(file.tensor), kDefaultTolerance,
                            file.name.empty() ? spec.path : file.name);
  }
  if (spec.kind == "dunkl-ramirez") return dunkl_ramirez(spec.a, spec.N);
  if (spec.kind == "conjugacy") {
    if (!spec.group_csv.empty())
      return conjugacy_hypergroup(group_from_csv(read_text_file(spec.group_csv), spec.group_csv));
    return conjugacy_hypergroup(builtin_group(spec.group));
  }
  throw ParameterError("family " + spec.kind + " is not a finite table");
}

std::string residual_json(const AxiomReport& r) {
  ordered_json j;
  j["probability"] = r.probability;
  j["commutativity"] = r.commutativity;
  j["identity"] = r.identity;
  j["support"] = r.support;
  j["involution"] = r.involution;
  j["associativity"] = r.associativity;
  return j.dump();
}

// ---------------------------------------------------------------- check

int check_polynomial_export(const ordered_json& doc, double tol, std::ostream& out) {
  const Index N = doc.at("N").get<Index>();
  std::vector<double> haar = doc.at("haar").get<std::vector<double>>();
  if (haar.size() != N + 1) throw ParseError("field haar must have N+1 entries");

  double prob = 0.0, support = 0.0, haar_gap = 0.0;
  std::map<std::pair<Index, Index>, std::vector<Mass>> rows;
  const auto& cs = doc.at("constants");
  for (std::size_t r = 0; r < cs.size(); ++r) {
    const std::string where = "constants[" + std::to_string(r) + "]";
    const Index m = cs[r].at("m").get<Index>(), n = cs[r].at("n").get<Index>();
    if (m > n || m + n > N) throw ParseError("field " + where + " has an invalid (m,n)");
    std::vector<Mass> row;
    double sum = 0.0;
    for (const auto& e : cs[r].at("entries")) {
      const Mass mass{e.at("z").get<Index>(), e.at("p").get<double>()};
      prob = std::max(prob, -mass.p);
      if (mass.z + m < n || mass.z > m + n) support = std::max(support, std::abs(mass.p));
      sum += mass.p;
      row.push_back(mass);
    }
    prob = std::max(prob, std::abs(sum - 1.0));
    rows[{m, n}] = std::move(row);
  }
  Index missing = 0;
  for (Index m = 0; m <= N; ++m)
    for (Index n = m; m + n <= N; ++n)
      if (!rows.count({m, n})) ++missing;
  for (Index n = 0; 2 * n <= N; ++n) {
    double g0 = 0.0;
    for (const Mass& e : rows[{n, n}])
      if (e.z == 0) g0 = e.p;
    haar_gap = std::max(haar_gap, g0 > 0.0 ? std::abs(haar[n] * g0 - 1.0) : 1.0);
  }
  const bool pass = prob <= tol && support <= tol && missing == 0 && haar_gap <= 1e-8;
  ordered_json j;
  j["kind"] = "polynomial";
  j["family"] = doc.value("family", "");
  j["N"] = N;
  j["residuals"] = {{"probability", prob}, {"support", support}, {"haar", haar_gap}};
  j["missing_rows"] = missing;
  j["tolerance"] = tol;
  j["pass"] = pass;
  out << j.dump(2) << '\n';
  return pass ? kOk : kInvalid;
}

int cmd_check(const std::string& path, double tol, std::ostream& out) {
  const std::string text = read_text_file(path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (doc.is_object() && doc.value("kind", "") == "polynomial") {
    try {
      return check_polynomial_export(doc, tol, out);
    } catch (const ordered_json::exception& e) {
      throw ParseError(e.what());
    }
  }
  auto file = parse_hypergroup_json(text);
  const AxiomReport rep = check_axioms(file.tensor, tol);
  ordered_json j;
  j["name"] = file.name;
  j["size"] = file.tensor.size();
  j["residuals"] = ordered_json::parse(residual_json(rep));
  j["tolerance"] = tol;
  j["pass"] = rep.pass();
  if (rep.pass()) {
    const auto w = solve_haar_weights(file.tensor, std::max(tol, kDefaultTolerance));
    j["haar"] = w;
    j["haar_residual"] = haar_invariance_residual(file.tensor, w);
  }
  out << j.dump(2) << '\n';
  return rep.pass() ? kOk : kInvalid;
}

// ---------------------------------------------------------------- dual

int cmd_dual(const TablePtr& table, std::uint64_t seed, double tol, std::ostream& out) {
  const auto dual = character_table(table, tol, seed);
  const Index n = table->size();
  out << "index,plancherel_weight,norm_sq,residual";
  for (Index x = 0; x < n; ++x) out << ",re:alpha(" << x << "),im:alpha(" << x << ")";
  out << '\n';
  for (Index i = 0; i < dual->size(); ++i) {
    out << i << ',' << format_double(dual->plancherel(i)) << ',' << format_double(dual->norm_sq(i))
        << ',' << format_double(dual->residual(i));
    for (Index x = 0; x < n; ++x)
      out << ',' << format_double(dual->value(i, x).real()) << ','
          << format_double(dual->value(i, x).imag());
    out << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- amenability

int cmd_amenability(FamilySpec spec, const std::optional<double>& point, Index horizon,
                    std::ostream& out) {
  normalize(spec);
  validate(spec);
  AmenabilityReport rep;
  if (point) {
    ObstructionThresholds t;
    t.horizon = horizon;
    if (spec.kind == "jacobi") {
      const auto oracle = polynomial_hypergroup(PolynomialRecurrence::jacobi(spec.alpha, spec.beta), 2);
      rep = alpha_obstruction(*oracle, *point, t);
    } else if (spec.kind == "dunkl-ramirez-dual") {
      rep = alpha_obstruction(DunklRamirezDualOracle(spec.a, horizon), *point, t);
    } else {
      throw ParameterError("--point needs a discrete family (jacobi, chebyshev, legendre or "
                           "dunkl-ramirez-dual)");
    }
  } else if (spec.kind == "jacobi") {
    rep = amenability_verdict(JacobiDual{spec.alpha, spec.beta}, horizon);
  } else if (spec.kind == "dunkl-ramirez") {
    rep = amenability_verdict(DunklRamirezFamily{spec.a}, horizon);
  } else if (spec.kind == "dunkl-ramirez-dual") {
    throw ParameterError("the discrete dual is not compact; use --point for the obstruction test");
  } else {
    rep = amenability_verdict(FiniteFamily{character_table(finite_table(spec))}, horizon);
  }
  out << rep.to_json() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- diagonal

std::vector<Index> parse_index_list(const std::string& text, const char* what) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long v = -1;
    try {
      v = std::stol(item, &pos);
    } catch (const std::logic_error&) {
    }
    if (v < 0 || pos != item.size())
      throw ParameterError(std::string("bad entry '") + item + "' in " + what);
    out.push_back(static_cast<Index>(v));
  }
  return out;
}

int cmd_diagonal(FamilySpec spec, const std::string& stages_text, const std::string& kernel_name,
                 std::uint64_t seed, std::ostream& out) {
  normalize(spec);
  validate(spec);
  const auto stages = parse_index_list(stages_text, "--stages");
  if (stages.empty()) throw ParameterError("--stages is empty");
  const Kernel kernel = parse_kernel(kernel_name);
  DiagonalSeries s;
  if (spec.kind == "jacobi") {
    const Index top = *std::max_element(stages.begin(), stages.end());
    const auto oracle =
        polynomial_hypergroup(PolynomialRecurrence::jacobi(spec.alpha, spec.beta), top);
    s = diagonal_norm_series(*oracle, stages, kernel);
  } else {
    s = diagonal_norm_series(character_table(finite_table(spec), 1e-9, seed), stages, kernel);
  }
  out << "stage,norm,sup_coeff,pi_Mn_residual\n";
  for (std::size_t i = 0; i < s.stages.size(); ++i)
    out << s.stages[i] << ',' << format_double(s.norms[i]) << ',' << format_double(s.sup_coeff[i])
        << ',' << format_double(s.pi_mn_residual[i]) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- ideals

int cmd_ideals(const FamilySpec& spec, const std::string& subset_text, std::uint64_t seed,
               std::ostream& out) {
  const auto table = finite_table(spec);
  const auto dual = character_table(table, 1e-9, seed);
  const auto minimal = minimal_ideals(dual);
  ordered_json j;
  j["name"] = table->label();
  j["size"] = table->size();
  j["minimal_ideals"] = minimal.size();
  std::vector<Index> dims;
  for (const auto& m : minimal) dims.push_back(m.dimension());
  j["minimal_dimensions"] = dims;
  bool ok = true;
  if (!subset_text.empty()) {
    const auto ideal = ideal_from_dual_subset(dual, parse_index_list(subset_text, "--subset"));
    ordered_json s;
    s["dual_set"] = ideal.dual_set;
    s["dimension"] = ideal.dimension();
    if (ideal.dimension() > 0) {
      const auto u = ideal_identity(dual, ideal.dual_set);
      double res = 0.0;
      for (const auto& g : ideal.basis()) res = std::max(res, norm_l1(convolve(u, g) - g));
      const auto h = hull(u, dual);
      s["identity_residual"] = res;
      s["idempotent_residual"] = norm_l1(convolve(u, u) - u);
      s["hull"] = h;
      s["hull_matches"] = h == ideal.dual_set;
      ok = h == ideal.dual_set && res <= 1e-10;
    }
    j["subset"] = s;
  }
  out << j.dump(2) << '\n';
  return ok ? kOk : kInvalid;
}

// ---------------------------------------------------------------- family

int cmd_family(const std::string& kind, FamilySpec spec, const std::string& output,
               std::ostream& out) {
  spec.kind = kind;
  normalize(spec);
  validate(spec);
  std::ostringstream text;
  if (spec.kind == "jacobi") {
    const auto oracle =
        polynomial_hypergroup(PolynomialRecurrence::jacobi(spec.alpha, spec.beta), spec.N);
    text << polynomial_oracle_json(*oracle);
  } else {
    write_hypergroup_json(text, *finite_table(spec));
  }
  if (output.empty() || output == "-") {
    out << text.str();
  } else {
    write_text_file(output, text.str());
  }
  return kOk;
}

} // namespace

void validate(const FamilySpec& spec) {
  if (spec.kind == "file") {
    if (spec.path.empty()) throw ParameterError("no hypergroup file given");
  } else if (spec.kind == "dunkl-ramirez" || spec.kind == "dunkl-ramirez-dual") {
    if (!(spec.a > 0.0 && spec.a <= 0.5)) throw ParameterError("--a must lie in (0, 1/2]");
    if (spec.kind == "dunkl-ramirez" && spec.N < 2) throw ParameterError("--N must be at least 2");
  } else if (spec.kind == "jacobi") {
    (void)PolynomialRecurrence::jacobi(spec.alpha, spec.beta);
  } else if (spec.kind == "conjugacy") {
    if (spec.group.empty() == spec.group_csv.empty())
      throw ParameterError("conjugacy needs exactly one of --group and --group-csv");
  } else {
    throw ParameterError("unknown family " + spec.kind);
  }
}

std::string polynomial_oracle_json(const PolynomialOracle& oracle) {
  const Index N = oracle.bound();
  std::ostringstream os;
  const auto& rec = oracle.recurrence();
  os << "{\n  \"kind\": \"polynomial\",\n  \"family\": \"" << oracle.family() << "\",\n";
  if (rec.is_jacobi())
    os << "  \"alpha\": " << format_double(rec.alpha()) << ",\n  \"beta\": "
       << format_double(rec.beta()) << ",\n";
  os << "  \"N\": " << N << ",\n  \"haar\": [";
  for (Index n = 0; n <= N; ++n) os << (n ? ", " : "") << format_double(oracle.haar(n));
  os << "],\n  \"constants\": [";
  bool first = true;
  for (Index m = 0; m <= N; ++m)
    for (Index n = m; m + n <= N; ++n) {
      os << (first ? "\n" : ",\n") << "    {\"m\": " << m << ", \"n\": " << n
         << ", \"entries\": [";
      first = false;
      const auto row = oracle.constants(m, n);
      for (std::size_t k = 0; k < row.size(); ++k)
        os << (k ? ", " : "") << "{\"z\": " << row[k].z << ", \"p\": " << format_double(row[k].p)
           << "}";
      os << "]}";
    }
  os << "\n  ]\n}\n";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical workbench for commutative hypergroup algebras", "hg"};
  app.require_subcommand(1);

  double tol = kDefaultTolerance;
  std::uint64_t seed = 42;
  std::string path;
  auto* check = app.add_subcommand("check", "validate a hypergroup or polynomial export file");
  check->add_option("file", path, "JSON file")->required();
  check->add_option("--tol", tol, "axiom tolerance");

  double dual_tol = 1e-9;
  auto* dual = app.add_subcommand("dual", "characters and Plancherel weights as CSV");
  FamilySpec dual_spec;
  add_family_options(*dual, dual_spec, true);
  dual->add_option("--seed", seed, "seed of the random combination");
  dual->add_option("--tol", dual_tol, "multiplicativity tolerance");

  FamilySpec am_spec;
  std::optional<double> point;
  Index horizon = 400;
  auto* amen = app.add_subcommand("amenability", "amenability report as JSON");
  add_family_options(*amen, am_spec, true);
  amen->add_option("--point", point, "character point for the obstruction test");
  amen->add_option("--horizon", horizon, "index horizon");

  FamilySpec diag_spec;
  std::string stages = "8,16,32,64", kernel = "fejer";
  auto* diag = app.add_subcommand("diagonal", "norm series of the approximate diagonal as CSV");
  add_family_options(*diag, diag_spec, true);
  diag->add_option("--stages", stages, "comma separated stages");
  diag->add_option("--kernel", kernel, "fejer or partial-sum");
  diag->add_option("--seed", seed, "seed of the character solver");

  FamilySpec ideal_spec;
  std::string subset;
  auto* ideals = app.add_subcommand("ideals", "ideal lattice summary as JSON");
  add_family_options(*ideals, ideal_spec, true);
  ideals->add_option("--subset", subset, "comma separated dual indices");
  ideals->add_option("--seed", seed, "seed of the character solver");

  FamilySpec fam_spec;
  std::string fam_kind, output;
  auto* fam = app.add_subcommand("family", "generate a family member");
  fam->add_option("kind", fam_kind, "dunkl-ramirez, jacobi, chebyshev, legendre or conjugacy")
      ->required()
      ->check(CLI::IsMember({"dunkl-ramirez", "jacobi", "chebyshev", "legendre", "conjugacy"}));
  fam->add_option("--a", fam_spec.a, "Dunkl-Ramirez parameter in (0, 1/2]");
  fam->add_option("--N", fam_spec.N, "truncation size or degree bound");
  fam->add_option("--alpha", fam_spec.alpha, "Jacobi alpha");
  fam->add_option("--beta", fam_spec.beta, "Jacobi beta");
  fam->add_option("--group", fam_spec.group, "builtin group");
  fam->add_option("--group-csv", fam_spec.group_csv, "group multiplication table as CSV");
  fam->add_option("-o,--output", output, "output file (default stdout)");

  std::vector<const char*> argv{"hg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hg: " << e.what() << '\n';
    return kUsage;
  }

  auto selected = [](FamilySpec spec) {
    const bool group = !spec.group.empty() || !spec.group_csv.empty();
    if (spec.kind == "file" && spec.path.empty() && group) spec.kind = "conjugacy";
    return spec;
  };

  try {
    if (*check) return cmd_check(path, tol, out);
    if (*dual) {
      auto spec = selected(dual_spec);
      validate(spec);
      return cmd_dual(finite_table(spec), seed, dual_tol, out);
    }
    if (*amen) return cmd_amenability(selected(am_spec), point, horizon, out);
    if (*diag) return cmd_diagonal(selected(diag_spec), stages, kernel, seed, out);
    if (*ideals) {
      auto spec = selected(ideal_spec);
      validate(spec);
      return cmd_ideals(spec, subset, seed, out);
    }
    if (*fam) return cmd_family(fam_kind, fam_spec, output, out);
  } catch (const Error& e) {
    err << "hg: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::out_of_range& e) {
    err << "hg: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}

} // namespace hg::cli
