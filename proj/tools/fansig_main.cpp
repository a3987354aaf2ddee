#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fansig/charclasses.hpp"
#include "fansig/cohomology.hpp"
#include "fansig/errors.hpp"
#include "fansig/io.hpp"
#include "fansig/sheaf.hpp"
#include "fansig/subdivision.hpp"

// Batch front-end: parse a fan file, run one analysis or theorem suite, and
// emit a machine-readable JSON report on stdout (or --output). Exit codes:
// 0 pass, 1 theorem-check failure, 2 input or operational error.

namespace {

using fansig::Json;

std::vector<int> parse_int_csv(const std::string& text,
                               const std::string& what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        comma == std::string::npos ? text.substr(pos)
                                   : text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(value);
    } catch (const std::exception&) {
      fansig::fail(fansig::ErrorCode::ParseError,
                   what + ": expected comma-separated integers, got '" +
                       text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

fansig::Cone parse_cone(const std::string& text) {
  fansig::Cone c = parse_int_csv(text, "--cone");
  std::sort(c.begin(), c.end());
  if (std::adjacent_find(c.begin(), c.end()) != c.end())
    fansig::fail(fansig::ErrorCode::ParseError,
                 "--cone: repeated ray index in '" + text + "'");
  return c;
}

fansig::SheafSpec sheaf_from_flags(const std::string& kind,
                                   const fansig::Cone& cone, int amount) {
  if (kind == "constant") return fansig::SheafSpec::constant(amount);
  if (kind == "indicator-star") return fansig::SheafSpec::indicator_star(cone);
  if (kind == "skyscraper") return fansig::SheafSpec::skyscraper(cone);
  if (kind == "line") return fansig::SheafSpec::line_o(cone);
  if (kind == "forms") return fansig::SheafSpec::forms(amount);
  fansig::fail(fansig::ErrorCode::ParseError,
               "--kind: unknown sheaf kind '" + kind + "'");
}

class Emitter {
 public:
  Emitter(std::string path, bool timings)
      : path_(std::move(path)),
        timings_(timings),
        start_(std::chrono::steady_clock::now()) {}

  void emit(Json doc) const {
    if (timings_) {
      const auto elapsed = std::chrono::steady_clock::now() - start_;
      doc["timings_ms"]["total"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
              .count();
    }
    const std::string text = doc.dump() + "\n";
    if (path_.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path_);
    if (!out)
      fansig::fail(fansig::ErrorCode::ParseError, "cannot write " + path_);
    out << text;
  }

 private:
  std::string path_;
  bool timings_;
  std::chrono::steady_clock::time_point start_;
};

void write_subdivision_record(const std::string& path,
                              const std::vector<fansig::SubdivisionMap>& maps) {
  Json steps = Json::array();
  for (const fansig::SubdivisionMap& map : maps) {
    Json row;
    row["new_ray"] = map.new_ray;
    row["center"] = map.center;
    steps.push_back(std::move(row));
  }
  Json doc;
  doc["steps"] = std::move(steps);
  std::ofstream out(path);
  if (!out) fansig::fail(fansig::ErrorCode::ParseError, "cannot write " + path);
  out << doc.dump() << "\n";
}

// Invariant battery along a random subdivision chain: refinement
// certificates, flag preservation, h-vector symmetry, the signature and
// Euler recursions, the Todd integral, Riemann-Roch on the ray classes, and
// the signature theorem on even rank.
Json run_fuzz(std::uint64_t seed, int steps, int dim, bool& all_pass) {
  const fansig::Fan start =
      fansig::catalog("projective(" + std::to_string(dim) + ")");
  const auto chain = fansig::random_chain(seed, start, steps);
  std::vector<const fansig::Fan*> fans{&start};
  for (const auto& map : chain) fans.push_back(&map.source);

  Json checks = Json::array();
  all_pass = true;
  const auto record = [&](const std::string& name, bool ok) {
    checks.push_back(Json{{"name", name}, {"pass", ok}});
    all_pass = all_pass && ok;
  };

  bool refinement = true;
  for (const auto& map : chain) refinement &= fansig::verify_refinement(map);
  record("refinement_certificates", refinement);

  bool flags = true;
  for (const fansig::Fan* fan : fans)
    flags &= fan->complete && fan->simplicial && fan->unimodular;
  record("flags_preserved", flags);

  bool symmetric = true;
  for (const fansig::Fan* fan : fans) {
    const std::vector<int> h = fansig::h_vector(*fan);
    std::vector<int> rev(h.rbegin(), h.rend());
    symmetric &= h == rev;
  }
  record("h_vector_symmetry", symmetric);

  // The subdivision recursions sign(source) = sign(target) - sign(star
  // quotient) and likewise for epsilon hold on even-rank fans.
  if (dim % 2 == 0) {
    bool sig_recursion = true;
    bool eps_recursion = true;
    for (const auto& map : chain) {
      const fansig::SignatureReport before =
          fansig::signature_report(map.target);
      const fansig::SignatureReport after =
          fansig::signature_report(map.source);
      const fansig::QuotientStar quotient =
          fansig::quotient_star_fan(map.target, map.center);
      const fansig::SignatureReport star =
          fansig::signature_report(quotient.fan);
      sig_recursion &= after.signature == before.signature - star.signature;
      eps_recursion &= after.epsilon == before.epsilon - star.epsilon;
    }
    record("signature_recursion", sig_recursion);
    record("epsilon_recursion", eps_recursion);
  }

  const fansig::Fan& final_fan = *fans.back();
  record("todd_integral", fansig::todd_check(final_fan).pass);

  bool rr = fansig::rr_check(final_fan,
                             fansig::kclass_of(final_fan,
                                               fansig::SheafSpec::line_o({})))
                .pass;
  for (const fansig::Cone& ray : final_fan.cones_of(1))
    rr &= fansig::rr_check(final_fan,
                           fansig::kclass_of(final_fan,
                                             fansig::SheafSpec::line_o(ray)))
              .pass;
  record("riemann_roch_ray_classes", rr);

  if (final_fan.rank % 2 == 0)
    record("signature_theorem", fansig::signature_theorem_check(final_fan).pass);

  Json doc;
  doc["seed"] = seed;
  doc["steps"] = steps;
  doc["dim"] = dim;
  doc["fans_visited"] = static_cast<int>(fans.size());
  doc["checks"] = std::move(checks);
  doc["pass"] = all_pass;
  return doc;
}

std::string strip_code_prefix(const fansig::Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(fansig::error_name(e.code())) + ": ";
  if (what.rfind(prefix, 0) == 0) return what.substr(prefix.size());
  return what;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology, K-theory, and signature checks for "
               "complete simplicial fans"};
  app.require_subcommand(1);

  std::string fan_path;
  std::string output_path;
  std::string map_path;
  std::string cone_arg;
  std::string ray_arg;
  std::string monomial_arg;
  std::string kind = "line";
  int amount = 1;
  std::uint64_t seed = 1;
  int steps = 1;
  int dim = 2;
  bool timings = false;

  const auto add_common = [&](CLI::App* cmd, bool needs_fan) {
    if (needs_fan)
      cmd->add_option("fan", fan_path, "fan file (JSON)")->required();
    cmd->add_option("--output", output_path,
                    "write the report to this file instead of stdout");
    cmd->add_flag("--timings", timings,
                  "include a timings_ms block in the report");
  };
  const auto add_sheaf_flags = [&](CLI::App* cmd) {
    cmd->add_option("--kind", kind,
                    "constant | indicator-star | skyscraper | line | forms");
    cmd->add_option("--cone", cone_arg,
                    "cone as comma-separated ray indices (default: the zero "
                    "cone)");
    cmd->add_option("--amount", amount,
                    "constant dimension or exterior power for forms");
  };

  CLI::App* validate =
      app.add_subcommand("validate", "parse a fan file and check the axioms");
  add_common(validate, true);

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "report completeness, simpliciality, "
                                     "and unimodularity");
  add_common(classify_cmd, true);

  CLI::App* subdivide = app.add_subcommand(
      "subdivide", "star subdivision: --cone for one step (optionally with "
                   "an explicit --ray), or --seed/--steps for a random chain");
  add_common(subdivide, true);
  subdivide->add_option("--cone", cone_arg, "center cone to subdivide");
  subdivide->add_option("--ray", ray_arg,
                        "interior ray coordinates for a non-regular star "
                        "subdivision");
  subdivide->add_option("--seed", seed, "random chain seed");
  subdivide->add_option("--steps", steps, "number of random subdivisions");
  subdivide->add_option("--map", map_path,
                        "sidecar file for the subdivision record (defaults "
                        "to <output>.map.json when --output is given)");

  CLI::App* hvector =
      app.add_subcommand("hvector", "even Betti numbers of the fan");
  add_common(hvector, true);

  CLI::App* signature = app.add_subcommand(
      "signature", "h-vector, Poincare-pairing signature, and epsilon");
  add_common(signature, true);

  CLI::App* integrate_cmd = app.add_subcommand(
      "integrate", "integrate a top-degree monomial in the ray classes");
  add_common(integrate_cmd, true);
  integrate_cmd
      ->add_option("--monomial", monomial_arg,
                   "ray indices with repetition, comma-separated")
      ->required();

  CLI::App* chi_cmd = app.add_subcommand(
      "chi", "Euler characteristic of a sheaf specification");
  add_common(chi_cmd, true);
  add_sheaf_flags(chi_cmd);

  CLI::App* kclass_cmd = app.add_subcommand(
      "kclass", "K-class coefficients of a sheaf specification");
  add_common(kclass_cmd, true);
  add_sheaf_flags(kclass_cmd);

  CLI::App* todd = app.add_subcommand(
      "todd-check", "genus-one identity: the Todd integral equals 1");
  add_common(todd, true);

  CLI::App* rr = app.add_subcommand(
      "rr-check", "Riemann-Roch: chi against the Chern-Todd integral");
  add_common(rr, true);
  rr->add_option("--cone", cone_arg,
                 "check the single class [O(cone)] instead of every cone");

  CLI::App* sig_check = app.add_subcommand(
      "sig-check", "signature theorem: signature = epsilon = L integral");
  add_common(sig_check, true);

  CLI::App* lr = app.add_subcommand(
      "lr-certify", "Leung-Reiner nonnegativity certificate");
  add_common(lr, true);

  CLI::App* fuzz = app.add_subcommand(
      "fuzz", "invariant suite along a random subdivision chain");
  add_common(fuzz, false);
  fuzz->add_option("--seed", seed, "chain seed");
  fuzz->add_option("--steps", steps, "subdivision steps");
  fuzz->add_option("--dim", dim, "rank of the starting projective fan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Emitter out(output_path, timings);

    if (validate->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      Json doc;
      doc["valid"] = true;
      doc["rank"] = fan.rank;
      doc["rays"] = fan.num_rays();
      doc["maximal_cones"] = static_cast<int>(fan.maximal.size());
      out.emit(doc);
      return 0;
    }

    if (classify_cmd->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      Json doc;
      doc["rank"] = fan.rank;
      doc["complete"] = fan.complete;
      doc["simplicial"] = fan.simplicial;
      doc["unimodular"] = fan.unimodular;
      out.emit(doc);
      return 0;
    }

    if (subdivide->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      std::vector<fansig::SubdivisionMap> maps;
      fansig::Fan result;
      if (subdivide->count("--cone") > 0) {
        const fansig::Cone center = parse_cone(cone_arg);
        if (subdivide->count("--ray") > 0) {
          const std::vector<int> coords = parse_int_csv(ray_arg, "--ray");
          if (static_cast<int>(coords.size()) != fan.rank)
            fansig::fail(fansig::ErrorCode::ParseError,
                         "--ray: expected " + std::to_string(fan.rank) +
                             " coordinates");
          fansig::Vec v(fan.rank);
          for (int j = 0; j < fan.rank; ++j) v(j) = fansig::Rational(coords[j]);
          auto [refined, map] = fansig::star_subdivide(fan, center, v);
          result = std::move(refined);
          maps.push_back(std::move(map));
        } else {
          auto [refined, map] = fansig::regular_star_subdivide(fan, center);
          result = std::move(refined);
          maps.push_back(std::move(map));
        }
      } else {
        maps = fansig::random_chain(seed, fan, steps);
        result = maps.empty() ? fan : maps.back().source;
      }
      if (map_path.empty() && !output_path.empty())
        map_path = output_path + ".map.json";
      if (!map_path.empty()) write_subdivision_record(map_path, maps);
      out.emit(fansig::fan_to_json(result));
      return 0;
    }

    if (hvector->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      Json doc;
      doc["h"] = fansig::h_vector(fan);
      out.emit(doc);
      return 0;
    }

    if (signature->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      const fansig::SignatureReport rep = fansig::signature_report(fan);
      Json doc;
      doc["h"] = rep.h;
      doc["signature"] = rep.signature;
      doc["epsilon"] = rep.epsilon;
      out.emit(doc);
      return 0;
    }

    if (integrate_cmd->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      fansig::Monomial m = parse_int_csv(monomial_arg, "--monomial");
      std::sort(m.begin(), m.end());
      Json doc;
      doc["integral"] =
          fansig::rational_to_json(fansig::integrate(fan, fansig::sr_monomial(m)));
      out.emit(doc);
      return 0;
    }

    if (chi_cmd->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      const fansig::SheafSpec spec =
          sheaf_from_flags(kind, parse_cone(cone_arg), amount);
      Json doc;
      doc["chi"] = fansig::euler_char(fan, spec);
      out.emit(doc);
      return 0;
    }

    if (kclass_cmd->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      const fansig::SheafSpec spec =
          sheaf_from_flags(kind, parse_cone(cone_arg), amount);
      const fansig::KClass cls = fansig::kclass_of(fan, spec);
      Json table = Json::array();
      for (const auto& [cone, coeff] : cls.coeff) {
        Json row;
        row["cone"] = cone;
        row["value"] = fansig::rational_to_json(coeff);
        table.push_back(std::move(row));
      }
      Json doc;
      doc["coefficients"] = std::move(table);
      out.emit(doc);
      return 0;
    }

    if (todd->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      const fansig::TheoremReport rep = fansig::todd_check(fan);
      out.emit(fansig::theorem_report_to_json(rep));
      return rep.pass ? 0 : 1;
    }

    if (rr->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      if (rr->count("--cone") > 0) {
        const fansig::TheoremReport rep = fansig::rr_check(
            fan, fansig::kclass_of(fan, fansig::SheafSpec::line_o(
                                            parse_cone(cone_arg))));
        out.emit(fansig::theorem_report_to_json(rep));
        return rep.pass ? 0 : 1;
      }
      // Sweep every basis class [O(sigma)].
      int checked = 0;
      bool pass = true;
      for (const fansig::Cone& sigma : fan.all_cones()) {
        pass &= fansig::rr_check(fan, fansig::kclass_of(
                                          fan, fansig::SheafSpec::line_o(sigma)))
                    .pass;
        ++checked;
      }
      fansig::TheoremReport rep;
      rep.theorem = "riemann_roch";
      rep.fan_id = "rank " + std::to_string(fan.rank) + ", " +
                   std::to_string(fan.num_rays()) + " rays, " +
                   std::to_string(fan.maximal.size()) + " maximal cones";
      rep.quantities.emplace_back("classes_checked", fansig::Rational(checked));
      rep.status = pass ? "pass" : "fail";
      rep.pass = pass;
      out.emit(fansig::theorem_report_to_json(rep));
      return pass ? 0 : 1;
    }

    if (sig_check->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      const fansig::TheoremReport rep = fansig::signature_theorem_check(fan);
      out.emit(fansig::theorem_report_to_json(rep));
      return rep.pass ? 0 : 1;
    }

    if (lr->parsed()) {
      const fansig::Fan fan = fansig::load_fan_file(fan_path);
      const fansig::TheoremReport rep = fansig::leung_reiner_certificate(fan);
      out.emit(fansig::theorem_report_to_json(rep));
      return rep.pass ? 0 : 1;
    }

    if (fuzz->parsed()) {
      bool pass = false;
      Json doc = run_fuzz(seed, steps, dim, pass);
      out.emit(std::move(doc));
      return pass ? 0 : 1;
    }
  } catch (const fansig::Error& e) {
    Json err;
    err["error"] = fansig::error_name(e.code());
    err["detail"] = strip_code_prefix(e);
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "internal";
    err["detail"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }

  return 2;  // unreachable: require_subcommand guarantees a branch above
}
