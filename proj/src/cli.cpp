#include "gamow/cli.hpp"

#include "gamow/gamow_dynamics.hpp"
#include "gamow/rep_algebra.hpp"
#include "gamow/scattering_model.hpp"
#include "gamow/spectral_tools.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gamow::cli {

using nlohmann::ordered_json;

std::string format_number(double x) {
  if (x == 0.0)
    x = 0.0; // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

// JSON numbers carry the same 12 significant digits as text output.
double rounded(double x) {
  if (!std::isfinite(x) || x == 0.0)
    return x == 0.0 ? 0.0 : x;
  const std::string s = format_number(x);
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

const CLI::Validator kFinite(
    [](std::string &s) -> std::string {
      const auto v = parse_double(s);
      if (!v)
        return "'" + s + "' is not a number";
      if (!std::isfinite(*v))
        return "'" + s + "' is not finite";
      return {};
    },
    "FINITE", "finite");

// "x,y" -> (x, y), both finite.
std::optional<std::pair<double, double>> parse_pair(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos)
    return std::nullopt;
  const auto x = parse_double(s.substr(0, comma));
  const auto y = parse_double(s.substr(comma + 1));
  if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y))
    return std::nullopt;
  return std::make_pair(*x, *y);
}

const CLI::Validator kFinitePair(
    [](std::string &s) -> std::string {
      return parse_pair(s) ? std::string{} : "'" + s + "' is not a pair of finite numbers x,y";
    },
    "X,Y", "pair");

const CLI::Validator kPacket(
    [](std::string &s) -> std::string {
      constexpr std::string_view prefix = "gaussian:";
      if (s.rfind(prefix, 0) != 0 || !parse_pair(std::string_view(s).substr(prefix.size())))
        return "packet must be gaussian:<center>,<width>";
      return {};
    },
    "gaussian:C,W", "packet");

OutputFormat format_from_string(const std::string &s) {
  if (s == "json")
    return OutputFormat::json;
  if (s == "csv")
    return OutputFormat::csv;
  return OutputFormat::text;
}

// ---------------------------------------------------------------------------
// Output helpers

void write_csv(std::ostream &os, const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &rows) {
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

void write_table(std::ostream &os, const std::vector<std::string> &header,
                 const std::vector<std::vector<double>> &rows) {
  constexpr int w = 20;
  for (const auto &h : header)
    os << std::setw(w) << h;
  os << '\n';
  for (const auto &row : rows) {
    for (double v : row)
      os << std::setw(w) << format_number(v);
    os << '\n';
  }
}

ordered_json records(const std::vector<std::string> &header,
                     const std::vector<std::vector<double>> &rows) {
  ordered_json arr = ordered_json::array();
  for (const auto &row : rows) {
    ordered_json rec = ordered_json::object();
    for (std::size_t i = 0; i < header.size(); ++i)
      rec[header[i]] = rounded(row[i]);
    arr.push_back(std::move(rec));
  }
  return arr;
}

void emit_series(std::ostream &os, OutputFormat fmt, ordered_json meta,
                 const std::vector<std::string> &header,
                 const std::vector<std::vector<double>> &rows) {
  switch (fmt) {
  case OutputFormat::csv:
    write_csv(os, header, rows);
    break;
  case OutputFormat::json:
    meta["samples"] = records(header, rows);
    os << meta.dump(2) << '\n';
    break;
  case OutputFormat::text:
    for (const auto &[key, value] : meta.items())
      os << "# " << key << ": "
         << (value.is_string()        ? value.get<std::string>()
             : value.is_number_float() ? format_number(value.get<double>())
                                        : value.dump())
         << '\n';
    write_table(os, header, rows);
    break;
  }
}

ordered_json matrix_json(const IntMatrix &m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

void matrix_text(std::ostream &os, const std::string &name, const SymmetryOperator &op) {
  os << name << " (" << (op.antilinear ? "antilinear" : "linear") << ", "
     << op.dim() << "x" << op.dim() << ")\n";
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
    os << "  ";
    for (Eigen::Index k = 0; k < op.matrix.cols(); ++k)
      os << std::setw(3) << op.matrix(i, k);
    os << '\n';
  }
}

std::string spin_string(int twice_j) {
  return twice_j % 2 ? std::to_string(twice_j) + "/2" : std::to_string(twice_j / 2);
}

// ---------------------------------------------------------------------------
// Subcommands

void run_reps(const RepsParams &p, OutputFormat fmt, std::ostream &os) {
  const RepRow row = rep_row_from_int(p.row);
  const SpinLabel j(p.twice_j);
  const RelationReport rep = verify_group_relations(row, j);
  const SymmetryOperator c = build_c_matrix(j);
  const SymmetryOperator sigma = build_sigma(row, j);
  const SymmetryOperator r = build_r(row, j);
  const SymmetryOperator t = build_t(row, j);

  const std::pair<const char *, bool> flags[] = {
      {"sigma_squared_is_identity", rep.sigma_squared_is_identity},
      {"r_squared_matches_eps_r", rep.r_squared_matches_eps_r},
      {"t_squared_matches_eps_t", rep.t_squared_matches_eps_t},
      {"t_equals_sigma_r", rep.t_equals_sigma_r},
      {"sigma_r_equals_r_sigma", rep.sigma_r_equals_r_sigma},
      {"sigma_r_equals_r_sigma_up_to_sign", rep.sigma_r_equals_r_sigma_up_to_sign},
  };

  switch (fmt) {
  case OutputFormat::json: {
    ordered_json j_out;
    j_out["row"] = p.row;
    j_out["twice_j"] = p.twice_j;
    j_out["spin"] = spin_string(p.twice_j);
    j_out["space_doubling"] = space_doubling(row);
    j_out["eps_r"] = rep.eps_r;
    j_out["eps_t"] = rep.eps_t;
    j_out["C"] = matrix_json(c.matrix);
    const std::pair<const char *, const SymmetryOperator *> ops[] = {
        {"Sigma", &sigma}, {"R", &r}, {"T", &t}};
    for (const auto &[name, op] : ops)
      j_out[name] = {{"antilinear", op->antilinear}, {"matrix", matrix_json(op->matrix)}};
    ordered_json relations;
    for (const auto &[name, value] : flags)
      relations[name] = value;
    j_out["relations"] = relations;
    os << j_out.dump(2) << '\n';
    break;
  }
  case OutputFormat::csv:
    os << "row,twice_j,eps_r,eps_t";
    for (const auto &f : flags)
      os << ',' << f.first;
    os << '\n' << p.row << ',' << p.twice_j << ',' << rep.eps_r << ',' << rep.eps_t;
    for (const auto &f : flags)
      os << ',' << (f.second ? "true" : "false");
    os << '\n';
    break;
  case OutputFormat::text:
    os << "row " << p.row << ", j = " << spin_string(p.twice_j)
       << (space_doubling(row) ? ", doubled space (r = 0, 1)" : ", single space") << '\n';
    os << "eps_R = " << std::showpos << rep.eps_r << ", eps_T = " << rep.eps_t
       << std::noshowpos << "\n\n";
    matrix_text(os, "C", c);
    matrix_text(os, "Sigma", sigma);
    matrix_text(os, "R", r);
    matrix_text(os, "T", t);
    os << '\n';
    for (const auto &[name, value] : flags)
      os << std::left << std::setw(36) << name << std::right << (value ? "true" : "false")
         << '\n';
    break;
  }
}

void run_poles(const PolesParams &p, OutputFormat fmt, std::ostream &os) {
  const ScatteringModel model(p.g, p.a);
  SearchRegion region{p.re.first, p.re.second, p.im.first, p.im.second, p.seeds_re,
                      p.seeds_im};
  const auto poles = find_poles(model, region);
  const std::vector<std::string> header = {"re_k", "im_k", "e_r", "gamma", "residual"};
  std::vector<std::vector<double>> rows;
  for (const auto &pole : poles)
    rows.push_back({pole.k_pole.real(), pole.k_pole.imag(), pole.e_r, pole.gamma,
                    pole.residual});
  ordered_json meta;
  meta["g"] = rounded(p.g);
  meta["a"] = rounded(p.a);
  meta["count"] = poles.size();
  if (fmt == OutputFormat::json) {
    meta["poles"] = records(header, rows);
    os << meta.dump(2) << '\n';
    return;
  }
  emit_series(os, fmt, meta, header, rows);
}

void run_phase(const PhaseParams &p, OutputFormat fmt, std::ostream &os) {
  const ScatteringModel model(p.g, p.a);
  if (p.n < 1)
    throw std::domain_error("phase grid needs n >= 1");
  if (!(p.e_min > 0.0) || (p.n > 1 && !(p.e_max > p.e_min)))
    throw std::domain_error("phase grid needs 0 < emin < emax");
  std::vector<double> energies(static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.n; ++i)
    energies[static_cast<std::size_t>(i)] =
        p.n == 1 ? p.e_min : p.e_min + (p.e_max - p.e_min) * i / (p.n - 1);
  const auto delta = phase_shift_curve(model, energies);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double s = std::sin(delta[i]);
    rows.push_back({energies[i], delta[i], s * s});
  }
  ordered_json meta;
  meta["g"] = rounded(p.g);
  meta["a"] = rounded(p.a);
  emit_series(os, fmt, meta, {"E", "delta", "sin2delta"}, rows);
}

std::vector<double> uniform_grid(double t0, double t1, int n) {
  if (n < 1)
    throw std::domain_error("grid needs n >= 1");
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    t[static_cast<std::size_t>(i)] = n == 1 ? t0 : t0 + (t1 - t0) * i / (n - 1);
  if (n > 1)
    t.back() = t1;
  return t;
}

void run_evolve(const EvolveParams &p, OutputFormat fmt, std::ostream &os) {
  const EvolutionLaw law = law_from_string(p.law);
  const ResonancePole pole = ResonancePole::from_energy(p.e_r, p.gamma);
  GamowState state{pole,
                   (law == EvolutionLaw::g0 || law == EvolutionLaw::g1) ? GamowKind::growing
                                                                        : GamowKind::decaying,
                   RegimeIndex((law == EvolutionLaw::g1 || law == EvolutionLaw::d1) ? 1 : 0)};
  const auto series = evolution_series(state, uniform_grid(p.t0, p.t1, p.n));
  std::vector<std::vector<double>> rows;
  for (const auto &s : series)
    rows.push_back({s.t, s.amplitude.real(), s.amplitude.imag(), s.survival});
  ordered_json meta;
  meta["law"] = std::string(to_string(law));
  meta["kind"] = std::string(to_string(state.kind));
  meta["regime"] = state.regime.value();
  meta["regime_name"] = std::string(state.regime_name());
  meta["space"] = std::string(to_string(state.space_label()));
  meta["e_r"] = rounded(p.e_r);
  meta["gamma"] = rounded(p.gamma);
  emit_series(os, fmt, meta, {"t", "re_amp", "im_amp", "survival"}, rows);
}

void run_spectral(const SpectralParams &p, OutputFormat fmt, std::ostream &os) {
  const ScatteringModel model(p.g, p.a);
  if (!(p.k_max > 0.0) || p.n_k < 2 || !(p.r_max > 0.0) || p.n_r < 5)
    throw std::domain_error("spectral grid needs kmax > 0, nk >= 2, rmax > 0, nr >= 5");
  const auto decomp = build_decomposition(model, p.k_max, p.n_k, p.r_max, p.n_r);
  const auto packet = WavePacket::gaussian(decomp.grid(), p.packet_center, p.packet_width);
  const auto coeffs = project(decomp, packet);
  const auto rec = reconstruct(decomp, packet);
  const double error = reconstruct_error(decomp, packet);
  const double norm2 = packet.norm() * packet.norm();
  const double coeff_norm2 = coeffs.norm_squared(decomp.weights());

  switch (fmt) {
  case OutputFormat::csv: {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index i = 0; i < decomp.grid().size(); ++i)
      rows.push_back({decomp.grid().r[i], packet.values[i], rec.values[i]});
    write_csv(os, {"r", "input", "reconstructed"}, rows);
    break;
  }
  case OutputFormat::json: {
    ordered_json j;
    j["g"] = rounded(p.g);
    j["a"] = rounded(p.a);
    j["k_max"] = rounded(p.k_max);
    j["n_k"] = p.n_k;
    j["r_max"] = rounded(p.r_max);
    j["n_r"] = decomp.grid().size();
    j["bound_states"] = decomp.discrete().size();
    j["packet_norm_squared"] = rounded(norm2);
    j["coefficient_norm_squared"] = rounded(coeff_norm2);
    j["reconstruction_error"] = rounded(error);
    os << j.dump(2) << '\n';
    break;
  }
  case OutputFormat::text:
    os << "bound states:             " << decomp.discrete().size() << '\n';
    os << "radial points:            " << decomp.grid().size() << '\n';
    os << "packet norm^2:            " << format_number(norm2) << '\n';
    os << "coefficient norm^2:       " << format_number(coeff_norm2) << '\n';
    os << "reconstruction error:     " << format_number(error) << '\n';
    break;
  }
}

void run_hardy(const HardyParams &p, OutputFormat fmt, std::ostream &os) {
  HalfPlane hp;
  if (p.half_plane == "upper")
    hp = HalfPlane::upper;
  else if (p.half_plane == "lower")
    hp = HalfPlane::lower;
  else
    throw std::domain_error("half plane must be upper or lower");
  const auto samples = sample_single_pole(p.e_r, p.gamma, p.e_min, p.e_max, p.n);
  const HardyReport rep = hardy_check(samples, hp);
  switch (fmt) {
  case OutputFormat::json: {
    ordered_json j;
    j["half_plane"] = std::string(to_string(rep.half_plane));
    j["leakage"] = rounded(rep.leakage);
    j["is_member"] = rep.is_member;
    os << j.dump(2) << '\n';
    break;
  }
  case OutputFormat::csv:
    os << "half_plane,leakage,is_member\n"
       << to_string(rep.half_plane) << ',' << format_number(rep.leakage) << ','
       << (rep.is_member ? "true" : "false") << '\n';
    break;
  case OutputFormat::text:
    os << "half plane: " << to_string(rep.half_plane) << '\n'
       << "leakage:    " << format_number(rep.leakage) << '\n'
       << "member:     " << (rep.is_member ? "yes" : "no") << '\n';
    break;
  }
}

} // namespace

RunConfig parse_args(const std::vector<std::string> &args) {
  CLI::App app{"Resonance poles, Gamow semigroups and inversion co-representations",
               "gamowctl"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::string out_path;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "Write output to this file instead of stdout");

  RepsParams reps;
  auto *reps_cmd = app.add_subcommand("reps", "Inversion co-representation matrices and relations");
  reps_cmd->add_option("--row", reps.row, "Co-representation row 1..4")->required();
  reps_cmd->add_option("--twice-j", reps.twice_j, "Twice the spin")->required();

  PolesParams poles;
  std::string re_range, im_range;
  auto *poles_cmd = app.add_subcommand("poles", "Resonance poles of the delta-shell S-matrix");
  poles_cmd->add_option("--g", poles.g, "Coupling")->required()->check(kFinite);
  poles_cmd->add_option("--a", poles.a, "Shell radius")->required()->check(kFinite);
  poles_cmd->add_option("--re", re_range, "Re k range min,max")->required()->check(kFinitePair);
  poles_cmd->add_option("--im", im_range, "Im k range min,max")->required()->check(kFinitePair);
  poles_cmd->add_option("--seeds-re", poles.seeds_re, "Newton seeds along Re k");
  poles_cmd->add_option("--seeds-im", poles.seeds_im, "Newton seeds along Im k");

  PhaseParams phase;
  auto *phase_cmd = app.add_subcommand("phase", "Continuous s-wave phase shift");
  phase_cmd->add_option("--g", phase.g)->required()->check(kFinite);
  phase_cmd->add_option("--a", phase.a)->required()->check(kFinite);
  phase_cmd->add_option("--emin", phase.e_min)->required()->check(kFinite);
  phase_cmd->add_option("--emax", phase.e_max)->required()->check(kFinite);
  phase_cmd->add_option("--n", phase.n)->required();

  EvolveParams evolve;
  auto *evolve_cmd = app.add_subcommand("evolve", "Semigroup evolution of a Gamow amplitude");
  evolve_cmd->add_option("--er", evolve.e_r, "Resonance energy")->required()->check(kFinite);
  evolve_cmd->add_option("--gamma", evolve.gamma, "Resonance width")->required()->check(kFinite);
  evolve_cmd->add_option("--law", evolve.law, "g0, d0, g1 or d1")
      ->required()
      ->check(CLI::IsMember({"g0", "d0", "g1", "d1"}));
  evolve_cmd->add_option("--t0", evolve.t0)->required()->check(kFinite);
  evolve_cmd->add_option("--t1", evolve.t1)->required()->check(kFinite);
  evolve_cmd->add_option("--n", evolve.n)->required();

  SpectralParams spectral;
  std::string packet;
  auto *spectral_cmd = app.add_subcommand("spectral", "Wavepacket reconstruction from the spectral resolution");
  spectral_cmd->add_option("--g", spectral.g)->required()->check(kFinite);
  spectral_cmd->add_option("--a", spectral.a)->required()->check(kFinite);
  spectral_cmd->add_option("--kmax", spectral.k_max)->required()->check(kFinite);
  spectral_cmd->add_option("--nk", spectral.n_k)->required();
  spectral_cmd->add_option("--rmax", spectral.r_max)->required()->check(kFinite);
  spectral_cmd->add_option("--nr", spectral.n_r)->required();
  spectral_cmd->add_option("--packet", packet, "gaussian:<center>,<width>")
      ->required()
      ->check(kPacket);

  HardyParams hardy;
  std::string pole_arg;
  auto *hardy_cmd = app.add_subcommand("hardy", "Paley-Wiener test of a single-pole resonance function");
  hardy_cmd->add_option("--pole", pole_arg, "<er>,<gamma>")->required()->check(kFinitePair);
  hardy_cmd->add_option("--emin", hardy.e_min)->required()->check(kFinite);
  hardy_cmd->add_option("--emax", hardy.e_max)->required()->check(kFinite);
  hardy_cmd->add_option("--n", hardy.n)->required();
  hardy_cmd->add_option("--half-plane", hardy.half_plane, "upper or lower")
      ->check(CLI::IsMember({"upper", "lower"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp &) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError &e) {
    throw UsageError(e.what(), app.help());
  }

  RunConfig cfg;
  cfg.format = format_from_string(format);
  cfg.out_path = out_path;
  const CLI::App *sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  if (sub == reps_cmd) {
    cfg.params = reps;
  } else if (sub == poles_cmd) {
    poles.re = *parse_pair(re_range);
    poles.im = *parse_pair(im_range);
    cfg.params = poles;
  } else if (sub == phase_cmd) {
    cfg.params = phase;
  } else if (sub == evolve_cmd) {
    cfg.params = evolve;
  } else if (sub == spectral_cmd) {
    const auto cw = *parse_pair(std::string_view(packet).substr(std::string_view("gaussian:").size()));
    spectral.packet_center = cw.first;
    spectral.packet_width = cw.second;
    cfg.params = spectral;
  } else {
    const auto eg = *parse_pair(pole_arg);
    hardy.e_r = eg.first;
    hardy.gamma = eg.second;
    cfg.params = hardy;
  }
  return cfg;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
  std::ostringstream buffer;
  try {
    std::visit(
        [&](const auto &p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, RepsParams>)
            run_reps(p, config.format, buffer);
          else if constexpr (std::is_same_v<T, PolesParams>)
            run_poles(p, config.format, buffer);
          else if constexpr (std::is_same_v<T, PhaseParams>)
            run_phase(p, config.format, buffer);
          else if constexpr (std::is_same_v<T, EvolveParams>)
            run_evolve(p, config.format, buffer);
          else if constexpr (std::is_same_v<T, SpectralParams>)
            run_spectral(p, config.format, buffer);
          else
            run_hardy(p, config.format, buffer);
        },
        config.params);
  } catch (const std::exception &e) {
    err << "gamowctl " << config.subcommand << ": error: " << e.what() << '\n';
    return 1;
  }

  if (config.out_path.empty()) {
    out << buffer.str();
    return 0;
  }
  std::ofstream file(config.out_path, std::ios::binary);
  if (!file) {
    err << "gamowctl: error: cannot open '" << config.out_path << "' for writing\n";
    return 1;
  }
  file << buffer.str();
  return file ? 0 : 1;
}

int main_entry(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested &h) {
    out << h.what();
    return 0;
  } catch (const UsageError &e) {
    err << "gamowctl: usage error: " << e.what() << '\n' << e.usage();
    return 2;
  }
  return run(cfg, out, err);
}

} // namespace gamow::cli
