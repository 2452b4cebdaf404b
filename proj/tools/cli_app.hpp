#ifndef TRACELAT_TOOLS_CLI_APP_HPP
#define TRACELAT_TOOLS_CLI_APP_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tracelat/a3_factory.hpp"
#include "tracelat/cyclotomic.hpp"
#include "tracelat/orders.hpp"
#include "tracelat/quadratic_a2.hpp"

namespace tracelat::cli {

inline constexpr int kOk = 0;
inline constexpr int kFalsified = 1;
inline constexpr int kUsage = 2;

/// Certificate failures are falsifications; everything else is bad input.
inline int exit_code_for(Errc e) {
  switch (e) {
    case Errc::WrongGram:
    case Errc::NotFound:
    case Errc::NotMaximal:
      return kFalsified;
    default:
      return kUsage;
  }
}

inline Json classification_json(const Matrix& gram) {
  Classification c = classify_root_type(gram);
  return Json{{"type", c.type.tag()},
              {"even", c.even},
              {"det", to_string(c.det)},
              {"root_count", c.root_count},
              {"roots_generate", c.roots_generate},
              {"disc_group", to_json(disc_group(gram))}};
}

inline Json family_json(const Family& fam) {
  Json arr = Json::array();
  for (const auto& m : fam.members) arr.push_back(to_json(m));
  return arr;
}

inline Json order_report_json(const FakeA3Report& r) {
  Json j{{"prime", to_json(r.prime)},
         {"root_different", to_json(r.root_different)},
         {"lattice", to_json(r.lattice, r.type)},
         {"disc_group", to_json(r.disc_group)},
         {"type", r.type},
         {"galois_stable", r.galois_stable},
         {"dual_galois_stable", r.dual_galois_stable},
         {"certified", r.certified()}};
  j["odd_witness"] = r.odd_witness ? to_json(*r.odd_witness) : Json(nullptr);
  return j;
}

inline Coords parse_coords(const std::string& text) {
  Coords out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.size() != 3) throw Error(Errc::Parse, "expected three comma-separated rationals, got \"" + text + "\"");
  return out;
}

struct Result {
  Json doc;
  int code = kOk;
};

/// Parses argv, runs one subcommand, and writes a single JSON document.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact trace-form lattices in number fields"};
  app.require_subcommand(1);
  std::string json_path;
  auto add_json = [&](CLI::App* sub) { sub->add_option("--json", json_path, "Write JSON to this path"); };

  std::string t_text, gram_text, input_path, generator, alpha_text, df_text, disc_text, d_text = "3";
  long height = 0;
  unsigned long p = 0, n = 0;
  int sign = 1;
  bool falsify = false, want_different = false, want_sqrt = false, want_primes2 = false, want_fake = false;

  auto* gen_a3 = app.add_subcommand("gen-a3", "Distinct A3 trace lattices in a Shanks field");
  gen_a3->add_option("--t", t_text, "Field parameter p/q")->required();
  gen_a3->add_option("--height", height, "Slope height")->required()->check(CLI::PositiveNumber);
  add_json(gen_a3);

  auto* gen_sd = app.add_subcommand("gen-selfdual", "Distinct unimodular trace lattices in a Shanks field");
  gen_sd->add_option("--t", t_text, "Field parameter p/q")->required();
  gen_sd->add_option("--height", height, "Slope height")->required()->check(CLI::PositiveNumber);
  add_json(gen_sd);

  auto* classify = app.add_subcommand("classify", "Classify an integral Gram matrix");
  auto* gram_opt = classify->add_option("--gram", gram_text, "Gram matrix as a JSON nested array");
  auto* input_opt = classify->add_option("--input", input_path, "Lattice JSON (object or array) from another subcommand");
  gram_opt->excludes(input_opt);
  add_json(classify);

  auto* cyc = app.add_subcommand("cyclotomic", "Ideal lattices in cyclotomic fields");
  auto* p_opt = cyc->add_option("--p", p, "Odd prime p: classify (1 - z)^(-(p-3)/2)");
  auto* n_opt = cyc->add_option("--n", n, "Cyclotomic index n");
  auto* g_opt = cyc->add_option("--generator", generator, "Generator as an expression in z");
  p_opt->excludes(n_opt)->excludes(g_opt);
  n_opt->needs(g_opt);
  g_opt->needs(n_opt);
  add_json(cyc);

  auto* quad = app.add_subcommand("quad-a2", "A2 lattices in quadratic fields");
  quad->add_option("--d", d_text, "Field Q(sqrt(+-d))")->required();
  quad->add_option("--height", height, "Slope height")->required()->check(CLI::PositiveNumber);
  quad->add_option("--sign", sign, "1 for the real field, -1 for the imaginary one")->check(CLI::IsMember({1, -1}));
  quad->add_flag("--falsify", falsify, "Exhaustive search for any rational A2 basis");
  add_json(quad);

  auto* order = app.add_subcommand("order", "Maximal order and ideals of a Shanks field");
  order->add_option("--t", t_text, "Field parameter p/q")->required();
  order->add_flag("--different", want_different, "Inverse different");
  order->add_flag("--sqrt-different", want_sqrt, "Square root of the inverse different");
  order->add_flag("--primes2", want_primes2, "Primes above 2");
  order->add_flag("--fake-a3", want_fake, "Odd lattice p C^{-1} of discriminant 4");
  add_json(order);

  auto* obstruction = app.add_subcommand("obstruction", "Square-class exclusion for fractional ideals");
  obstruction->add_option("--dF", df_text, "Field discriminant")->required();
  obstruction->add_option("--disc-order", disc_text, "Order of the discriminant group")->required();
  add_json(obstruction);

  auto* reparam = app.add_subcommand("reparam", "Re-express a Shanks field through a trace-zero element");
  reparam->add_option("--t", t_text, "Field parameter p/q")->required();
  reparam->add_option("--alpha", alpha_text, "Power-basis coordinates a,b,c")->required();
  add_json(reparam);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Result res;
  try {
    if (gen_a3->parsed()) {
      res.doc = family_json(generate_family(parse_rational(t_text), height));
    } else if (gen_sd->parsed()) {
      res.doc = family_json(self_dual_family(parse_rational(t_text), height));
    } else if (classify->parsed()) {
      if (!gram_text.empty()) {
        Json g;
        try {
          g = Json::parse(gram_text);
        } catch (const Json::parse_error& e) {
          throw Error(Errc::Parse, std::string("--gram: ") + e.what());
        }
        res.doc = classification_json(matrix_from_json(g));
      } else if (!input_path.empty()) {
        std::ifstream in(input_path);
        if (!in) throw Error(Errc::Parse, "cannot open " + input_path);
        Json doc;
        try {
          doc = Json::parse(in);
        } catch (const Json::parse_error& e) {
          throw Error(Errc::Parse, input_path + ": " + e.what());
        }
        auto one = [](const Json& l) {
          if (!l.is_object() || !l.contains("gram")) throw Error(Errc::Parse, "lattice JSON needs a \"gram\" field");
          return classification_json(matrix_from_json(l["gram"]));
        };
        if (doc.is_array()) {
          res.doc = Json::array();
          for (const auto& l : doc) res.doc.push_back(one(l));
        } else {
          res.doc = one(doc);
        }
      } else {
        throw Error(Errc::Parse, "classify needs --gram or --input");
      }
    } else if (cyc->parsed()) {
      if (p) {
        CyclotomicReport r = verify_cyclotomic_ap(p);
        res.doc = classification_json(r.lattice.gram());
        res.doc["p"] = p;
        res.doc["generator"] = "(1 - z)^" + std::to_string(-static_cast<long>((p - 3) / 2));
        res.doc["lattice"] = to_json(r.lattice, r.classification.type.tag());
        if (r.classification.type != RootType{RootType::Kind::A, p - 1}) res.code = kFalsified;
      } else if (n) {
        CycField f(n);
        CycLattice l = principal_ideal_lattice(f, parse_cyclotomic_element(f, generator));
        res.doc = classification_json(l.gram());
        res.doc["n"] = n;
        res.doc["generator"] = generator;
        res.doc["lattice"] = to_json(l, res.doc["type"].get<std::string>());
      } else {
        throw Error(Errc::Parse, "cyclotomic needs --p or --n with --generator");
      }
    } else if (quad->parsed()) {
      const Integer d(parse_rational(d_text).get_num());
      if (parse_rational(d_text).get_den() != 1) throw Error(Errc::Parse, "--d must be an integer");
      if (falsify) {
        FalsifyResult r = falsify_a2(d, height);
        Json sols = Json::array();
        std::vector<QuadLattice> normal;
        for (const auto& s : r.solutions) {
          sols.push_back(to_json(s));
          if (s.x1 == s.x2 && s.y1 == -s.y2) {
            QuadLattice l(QuadraticField(r.d, sign), s.matrix());
            bool seen = false;
            for (const auto& m : normal) seen = seen || lattice_equal(m, l);
            if (!seen) normal.push_back(l);
          }
        }
        Json normals = Json::array();
        for (const auto& l : normal) normals.push_back(to_json(l, "A2"));
        res.doc = Json{{"d_input", to_string(r.d_input)},
                       {"d", to_string(r.d)},
                       {"height", r.height},
                       {"points", r.points},
                       {"solutions", sols},
                       {"normal_lattices", normals}};
        if (r.d != 3 && !r.solutions.empty()) res.code = kFalsified;
      } else {
        if (abs(squarefree_part(d)) != 3)
          throw Error(Errc::DimensionMismatch, "the slope family lives in Q(sqrt(+-3)); use --falsify for other d");
        A2Family fam = a2_family(height, sign);
        Json arr = Json::array();
        for (std::size_t i = 0; i < fam.lattices.size(); ++i) {
          Json j = to_json(fam.lattices[i], "A2");
          j["slope"] = Json::array({to_string(fam.slopes[i].first[0]), to_string(fam.slopes[i].first[1])});
          j["branch"] = fam.slopes[i].second == Branch::Plus ? "+" : "-";
          j["hnf"] = to_json(fam.lattices[i].canonical_basis());
          arr.push_back(std::move(j));
        }
        res.doc = Json{{"d", "3"}, {"sign", sign}, {"height", height}, {"count", arr.size()}, {"lattices", arr}};
      }
    } else if (order->parsed()) {
      const Rational t = parse_rational(t_text);
      ShanksField f = ShanksField::make(t);
      CubicOrder eq = equation_order(f);
      CubicOrder max = maximal_order(f);
      res.doc = Json{{"t", to_string(t)},
                     {"equation_order", to_json(eq)},
                     {"maximal_order", to_json(max)},
                     {"index", to_string(lattice_index(eq.lattice, max.lattice))},
                     {"conductor", is_perfect_square(max.disc) ? Json(to_string(isqrt(max.disc))) : Json(nullptr)}};
      if (want_different) {
        IdealLattice d = different_inverse(max);
        res.doc["different_inverse"] = to_json(d);
        res.doc["different_inverse"]["index"] = to_string(lattice_index(max.lattice, d));
      }
      if (want_sqrt) res.doc["sqrt_different_inverse"] = to_json(sqrt_different_inverse(max), "unimodular_odd");
      if (want_primes2) {
        Json ps = Json::array();
        for (const auto& l : primes_above_2(max)) ps.push_back(to_json(l));
        res.doc["primes_above_2"] = ps;
      }
      if (want_fake) {
        FakeA3Report r = fake_a3(max);
        res.doc["fake_a3"] = order_report_json(r);
        if (!r.certified()) res.code = kFalsified;
      }
    } else if (obstruction->parsed()) {
      const Rational df = parse_rational(df_text), dn = parse_rational(disc_text);
      if (df.get_den() != 1 || dn.get_den() != 1) throw Error(Errc::Parse, "--dF and --disc-order must be integers");
      Exclusion v = an_exclusion(df.get_num(), dn.get_num());
      res.doc = Json{{"dF", df_text}, {"disc_order", disc_text}, {"verdict", to_string(v)}};
    } else if (reparam->parsed()) {
      ShanksField f = ShanksField::make(parse_rational(t_text));
      FieldElement alpha = FieldElement::from(parse_coords(alpha_text));
      Reparametrization r = reparametrize(f, alpha);
      res.doc = Json{{"t", to_string(f.t())},
                     {"alpha", to_json(alpha)},
                     {"t_prime", to_string(r.t)},
                     {"u", to_json(r.u)},
                     {"norm_u", to_string(f.norm(r.u))}};
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }

  const std::string text = res.doc.dump(2) + "\n";
  if (json_path.empty()) {
    out << text;
  } else {
    std::ofstream file(json_path);
    if (!file) {
      err << "error: cannot write " << json_path << "\n";
      return kUsage;
    }
    file << text;
  }
  return res.code;
}

}  // namespace tracelat::cli

#endif  // TRACELAT_TOOLS_CLI_APP_HPP
