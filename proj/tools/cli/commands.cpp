#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "io.hpp"
#include "toricfol/error.hpp"
#include "toricfol/text.hpp"

namespace toricfol::cli {

namespace {

namespace fs = std::filesystem;

Json ratvec_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) out.push_back(q.get_num().get_si());
    else out.push_back(to_string(q));
  }
  return out;
}

Json ratmatrix_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(ratvec_json(m.row(r)));
  return out;
}

Json codim_json(const std::optional<std::size_t>& c) { return c ? Json(*c) : Json(nullptr); }

Json collections_json(const std::vector<RaySet>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(indices_json(c));
  return out;
}

Json polys_json(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

Json fields_json(const std::vector<VectorField>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(field_json(f));
  return out;
}

Json degrees_json(const std::vector<MultiDegree>& ds) {
  Json out = Json::array();
  for (const auto& d : ds) out.push_back(degree_json(d));
  return out;
}

std::optional<std::size_t> coefficient_codim(const DiffForm& w, const Fan& fan) {
  std::vector<Polynomial> coeffs;
  for (const auto& [J, f] : w.terms()) coeffs.push_back(f);
  return codim_in_variety(Ideal(w.nvars(), coeffs), fan);
}

Json split_json(const SplitData& sd) {
  return {{"q", sd.q},
          {"omega", to_string(sd.omega)},
          {"cox_degree", degree_json(sd.cox_degree)},
          {"label", degree_json(sd.label)},
          {"alphas", degrees_json(sd.alphas)},
          {"fields", fields_json(sd.fields)}};
}

Json projection_json(const EquivariantProjection& p) {
  return {{"S", indices_json(p.S)},
          {"J", indices_json(p.J)},
          {"W", indices_json(p.W)},
          {"operators", polys_json(p.operators)},
          {"adapted", ratmatrix_json(p.adapted)},
          {"pic_map", matrix_json(p.pic_map)},
          {"target_fan", fan_to_json(p.quotient.fan)},
          {"ray_correspondence", indices_json(p.quotient.ray_correspondence)},
          {"indeterminacy_codim", codim_json(p.indeterminacy_codim)}};
}

struct Context {
  Inputs inputs;
  std::uint64_t seed = 0;

  Fan fan(const std::string& path) {
    Fan f = fan_from_json(inputs.load(path), path + ":");
    return f;
  }
  Fan smooth_fan(const std::string& path) {
    Fan f = fan(path);
    require_smooth_complete(f, seed);
    return f;
  }
  FoliationFile foliation(const std::string& path, const Fan* target = nullptr) {
    return foliation_from_json(inputs, inputs.load(path), fs::path(path).parent_path(), path + ":", target);
  }
  ProjectionFile projection(const std::string& path) {
    return projection_from_json(inputs, inputs.load(path), fs::path(path).parent_path(), path + ":");
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric split foliations: fans, gradings, Cox-ring calculus, stability and pullbacks", "toricfol"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--seed", ctx.seed, "seed for every pseudorandom choice")->default_val(0);

  std::function<Json()> action;
  std::string a, b, cone, degree, point;
  bool strict = false, closed = false;

  auto file = [](CLI::App* sub, std::string& target, const char* name, const char* what) {
    sub->add_option(name, target, what)->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "smoothness, completeness and fixed points of a fan");
  file(validate_cmd, a, "fan", "fan file");
  validate_cmd->callback([&] {
    action = [&] {
      Fan f = ctx.fan(a);
      FanReport r = validate(f, ctx.seed);
      return Json{{"dim", f.dim()},
                  {"num_rays", f.num_rays()},
                  {"smooth", r.smooth},
                  {"complete", r.complete},
                  {"has_fixed_point", r.has_fixed_point},
                  {"notes", r.notes}};
    };
  });

  auto* picard_cmd = app.add_subcommand("picard", "Picard group grading of the Cox ring");
  file(picard_cmd, a, "fan", "fan file");
  picard_cmd->callback([&] {
    action = [&] {
      Fan f = ctx.smooth_fan(a);
      DegreeData dd = grading(f);
      return Json{{"rank", dd.s()},
                  {"degree_matrix", matrix_json(dd.degree_matrix())},
                  {"variable_degrees", degrees_json(dd.var_degrees())},
                  {"canonical", degree_json(dd.canonical())},
                  {"primitive_collections", collections_json(primitive_collections(f))}};
    };
  });

  auto* eff_cmd = app.add_subcommand("eff-cone", "effective cone generators and facets");
  file(eff_cmd, a, "fan", "fan file");
  eff_cmd->callback([&] {
    action = [&] {
      DegreeData dd = grading(ctx.smooth_fan(a));
      const auto& c = dd.effective_cone();
      Json gens = Json::array(), facets = Json::array();
      for (const auto& g : c.generators) gens.push_back(ratvec_json(g));
      for (const auto& g : c.facets) facets.push_back(ratvec_json(g));
      return Json{{"generators", gens}, {"facets", facets}, {"strictly_convex", c.strictly_convex}};
    };
  });

  auto* max_cmd = app.add_subcommand("maximal", "maximal torus-invariant divisors");
  file(max_cmd, a, "fan", "fan file");
  max_cmd->callback([&] {
    action = [&] {
      DegreeData dd = grading(ctx.smooth_fan(a));
      auto lex = maximal_divisors_lexicographic(dd);
      auto pair = maximal_divisors_pairwise(dd);
      Json classes = Json::array();
      for (const auto& c : equivalence_classes(dd)) classes.push_back(indices_json(c));
      return Json{{"maximal", indices_json(maximal_divisors(dd))},
                  {"lexicographic", indices_json(lex)},
                  {"pairwise", indices_json(pair)},
                  {"agree", lex == pair},
                  {"classes", classes}};
    };
  });

  auto* blowup_cmd = app.add_subcommand("blowup", "star subdivision at a cone");
  file(blowup_cmd, a, "fan", "fan file");
  blowup_cmd->add_option("--cone", cone, "1-based ray indices of the cone")->required();
  blowup_cmd->callback([&] {
    action = [&] {
      Fan f = ctx.fan(a);
      Fan g = star_subdivision(f, parse_indices(cone));
      return Json{{"fan", fan_to_json(g)}, {"new_ray", g.num_rays() > f.num_rays() ? Json(g.num_rays()) : Json(nullptr)}};
    };
  });

  auto* product_cmd = app.add_subcommand("product", "product of two fans");
  file(product_cmd, a, "first", "first fan file");
  file(product_cmd, b, "second", "second fan file");
  product_cmd->callback([&] {
    action = [&] { return Json{{"fan", fan_to_json(product(ctx.fan(a), ctx.fan(b)))}}; };
  });

  auto* divisor_cmd = app.add_subcommand("divisor-fan", "fan of the orbit closure of a cone");
  file(divisor_cmd, a, "fan", "fan file");
  divisor_cmd->add_option("--cone", cone, "1-based ray indices of the cone")->required();
  divisor_cmd->callback([&] {
    action = [&] {
      StarQuotient q = star_quotient(ctx.fan(a), parse_indices(cone));
      return Json{{"fan", fan_to_json(q.fan)},
                  {"ray_correspondence", indices_json(q.ray_correspondence)},
                  {"quotient_map", matrix_json(q.quotient_map)}};
    };
  });

  auto* basis_cmd = app.add_subcommand("basis", "monomial basis of a graded piece");
  file(basis_cmd, a, "fan", "fan file");
  basis_cmd->add_option("degree", degree, "comma-separated multidegree")->required();
  basis_cmd->callback([&] {
    action = [&] {
      DegreeData dd = grading(ctx.smooth_fan(a));
      MultiDegree d = parse_degree(degree, dd.s());
      Json mons = Json::array();
      const auto piece = graded_piece_basis(dd, d);
      for (const auto& e : piece) mons.push_back(to_string(Polynomial::monomial(e)));
      return Json{{"degree", degree_json(d)}, {"dimension", piece.size()}, {"monomials", mons}};
    };
  });

  auto* fol = app.add_subcommand("fol", "split foliations given by homogeneous fields");
  fol->require_subcommand(1);

  auto* fol_build = fol->add_subcommand("build", "the form omega of the fields");
  file(fol_build, a, "foliation", "foliation file");
  fol_build->callback([&] {
    action = [&] {
      auto f = ctx.foliation(a);
      SplitData sd = build_omega(f.dd, f.fields);
      Json r = split_json(sd);
      r["descent"] = check_descent(sd.omega, f.dd);
      return r;
    };
  });

  auto* fol_check = fol->add_subcommand("check", "descent, decomposability, integrability, involutivity");
  file(fol_check, a, "foliation", "foliation file");
  fol_check->callback([&] {
    action = [&] {
      auto f = ctx.foliation(a);
      SplitData sd = build_omega(f.dd, f.fields);
      return Json{{"omega", to_string(sd.omega)},
                  {"descent", check_descent(sd.omega, f.dd)},
                  {"decomposable", check_ldc(sd.omega)},
                  {"integrable", check_integrability(sd.omega)},
                  {"involutive", involutivity_check(f.dd, f.fields)}};
    };
  });

  auto* fol_singular = fol->add_subcommand("singular", "singular ideal and its codimension");
  file(fol_singular, a, "foliation", "foliation file");
  fol_singular->callback([&] {
    action = [&] {
      auto f = ctx.foliation(a);
      SplitData sd = build_omega(f.dd, f.fields);
      Ideal sing = singular_ideal(sd, f.dd);
      auto codim = codim_in_variety(sing, f.fan);
      return Json{{"groebner_basis", polys_json(sing.basis())},
                  {"dimension_outside_irrelevant", dimension_outside_irrelevant(sing, primitive_collections(f.fan))},
                  {"codim_in_variety", codim_json(codim)},
                  {"codim_at_least_2", !codim || *codim >= 2}};
    };
  });

  auto* fol_kupka = fol->add_subcommand("kupka", "whether a singular point is a Kupka point");
  file(fol_kupka, a, "foliation", "foliation file");
  fol_kupka->add_option("--point", point, "comma-separated Cox coordinates, e.g. 1,i,0")->required();
  fol_kupka->callback([&] {
    action = [&] {
      auto f = ctx.foliation(a);
      auto p = parse_point(point);
      if (p.size() != f.dd.nvars())
        throw ParseError("--point", "expected " + std::to_string(f.dd.nvars()) + " coordinates");
      SplitData sd = build_omega(f.dd, f.fields);
      return Json{{"point", point}, {"kupka", kupka_test(sd.omega, p, f.fan)}};
    };
  });

  auto* fol_normalize = fol->add_subcommand("normalize", "fields normalized with respect to d omega");
  file(fol_normalize, a, "foliation", "foliation file");
  fol_normalize->callback([&] {
    action = [&] {
      auto f = ctx.foliation(a);
      SplitData sd = build_omega(f.dd, f.fields);
      auto res = normalize_lemma_diff(sd, f.dd);
      Json bs = Json::array();
      for (const auto& q : res.b) bs.push_back(rational_json(q));
      return Json{{"fields", fields_json(res.data.fields)},
                  {"f", polys_json(res.f)},
                  {"b", bs},
                  {"euler", degree_json(*res.data.euler)},
                  {"omega", to_string(res.data.omega)},
                  {"identity_holds", lemma_diff_identity_holds(res.data, f.dd)}};
    };
  });

  auto* fol_stability = fol->add_subcommand("stability", "first-order stability gap");
  file(fol_stability, a, "foliation", "foliation file");
  fol_stability->add_flag("--closed-differentials", closed, "use d omega ^ d eta = 0 as the integrability condition");
  fol_stability->callback([&] {
    action = [&] {
      auto f = ctx.foliation(a);
      SplitData sd = build_omega(f.dd, f.fields);
      DeformationOptions opt;
      if (closed) opt.integrability = TangentCondition::ClosedDifferentials;
      StabilityReport r = stability_gap(sd, f.dd, f.fan, opt);
      return Json{{"q", sd.q},
                  {"tangent_condition", closed ? "closed-differentials" : "linearized"},
                  {"deformation_dim", r.deformation_dim},
                  {"full_image_rank", r.full_image_rank},
                  {"image_rank", r.image_rank},
                  {"gap", r.gap},
                  {"omega_in_image", r.omega_in_image},
                  {"image_in_deformations", r.image_in_deformations},
                  {"hypothesis_codim", codim_json(r.hypothesis_codim)},
                  {"hypothesis_holds", r.hypothesis_holds}};
    };
  });

  auto* pb = app.add_subcommand("pullback", "equivariant linear projections");
  pb->require_subcommand(1);

  auto* pb_make = pb->add_subcommand("make", "validate a projection");
  file(pb_make, a, "projection", "projection file");
  pb_make->add_flag("--strict", strict, "require maximal divisors and a target of dimension >= 2");
  pb_make->callback([&] {
    action = [&] {
      auto p = ctx.projection(a);
      ProjectionOptions opt;
      opt.strict_mode = strict;
      return projection_json(make_projection(p.dd, p.fan, p.S, p.operators, opt));
    };
  });

  auto* pb_apply = pb->add_subcommand("apply", "pull back a foliation on the target");
  file(pb_apply, a, "projection", "projection file");
  file(pb_apply, b, "target", "foliation file on the target divisor");
  pb_apply->callback([&] {
    action = [&] {
      auto pf = ctx.projection(a);
      auto p = make_projection(pf.dd, pf.fan, pf.S, pf.operators);
      Json raw = ctx.inputs.load(b);
      if (raw.is_object() && raw.contains("fan")) {
        Fan declared = fan_reference(ctx.inputs, raw["fan"], fs::path(b).parent_path(), b + ":/fan");
        if (!same_fan(declared, p.quotient.fan))
          throw DomainError("pullback.target_fan", "the target file's fan is not the fan of D_S");
      }
      auto g = foliation_from_json(ctx.inputs, raw, fs::path(b).parent_path(), b + ":", &p.quotient.fan);
      SplitData target = build_omega(g.dd, g.fields);
      DiffForm omega = pullback_form(p, pf.dd, target.omega);
      auto split = pullback_splitting(p, pf.dd, target.alphas);
      auto lifted = pullback_split_data(p, pf.dd, target);
      return Json{{"target_omega", to_string(target.omega)},
                  {"omega", to_string(omega)},
                  {"degree", degree_json(degree_of_form(omega, pf.dd))},
                  {"codim_target", codim_json(coefficient_codim(target.omega, p.quotient.fan))},
                  {"codim_pullback", codim_json(coefficient_codim(omega, pf.fan))},
                  {"splitting", degrees_json(split.summands)},
                  {"fiber_fields", fields_json(split.fiber_fields)},
                  {"split_fields", fields_json(lifted.data.fields)},
                  {"split_factor", to_string(lifted.factor)}};
    };
  });

  auto* pb_recognize = pb->add_subcommand("recognize", "recognize a split foliation as a pullback");
  file(pb_recognize, a, "foliation", "foliation file");
  pb_recognize->callback([&] {
    action = [&] {
      auto f = ctx.foliation(a);
      SplitData sd = build_omega(f.dd, f.fields);
      Json recs = Json::array();
      for (const auto& r : recognize_pullback_all(sd, f.dd, f.fan))
        recs.push_back({{"projection", projection_json(r.projection)},
                        {"fiber_fields", indices_json(r.fiber_fields)},
                        {"factor", to_string(r.factor)},
                        {"target", split_json(r.target)}});
      return Json{{"omega", to_string(sd.omega)}, {"recognitions", recs}};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "toricfol: usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    Json result = action();
    Json report = {{"schema", kReportSchema},
                   {"command", args},
                   {"seed", ctx.seed},
                   {"inputs", ctx.inputs.digests()},
                   {"result", result}};
    out << report.dump(2) << "\n";
    return 0;
  } catch (const ParseError& e) {
    err << "toricfol: parse error at " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "toricfol: domain error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "toricfol: domain error: cli.internal: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace toricfol::cli
