#pragma once

// confcli: command-line front end.
//
// Exit codes: 0 success, 1 parse/config error, 2 element not in the span of normal words,
// 3 axiom violation or failed self-check.

#include "confalg/expr.hpp"
#include "confalg/freeconf.hpp"
#include "confalg/json_io.hpp"
#include "confalg/pseudo.hpp"
#include "confalg/random.hpp"

#include <CLI11.hpp>

#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace confalg::cli {

enum ExitCode : int { ok = 0, input_error = 1, not_in_span = 2, axiom_violation = 3 };

struct CheckReport {
    explicit CheckReport(std::string name = {}) : axiom(std::move(name)) {}

    std::string axiom;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::optional<std::string> counterexample;

    void record(bool pass, const std::function<std::string()>& describe) {
        ++trials;
        if (pass) {
            ++passed;
            return;
        }
        ++failed;
        if (!counterexample) counterexample = describe();
    }
    json to_json(std::uint64_t seed) const {
        json j{{"axiom", axiom}, {"trials", trials}, {"passed", passed}, {"failed", failed}, {"seed", seed},
               {"status", failed == 0 ? "pass" : "fail"}};
        j["counterexample"] = counterexample ? json(*counterexample) : json(nullptr);
        return j;
    }
};

namespace detail {

inline ConfElement product(const ConfElement& x, Degree n, const ConfElement& y, const AlgebraConfig& cfg,
                           Engine engine) {
    return engine == Engine::realize ? cprod(x, n, y, cfg) : cprod_rw(x, n, y, cfg);
}

inline void require_conformal(const AlgebraConfig& cfg) {
    if (cfg.kind() != AlgebraKind::noncommutative)
        throw ConfigError("this command needs a config with mode \"conformal\"");
}

inline CheckReport check_assoc(const AlgebraConfig& cfg, std::size_t trials, std::uint64_t seed, Engine engine) {
    require_conformal(cfg);
    CheckReport rep{"assoc"};
    RandomSource rs(seed);
    const Degree top = 2 * cfg.max_locality();
    for (std::size_t t = 0; t < trials; ++t) {
        auto x = rs.conf_element(cfg, 2, 1, 2);
        auto y = rs.conf_element(cfg, 2, 1, 2);
        auto z = rs.conf_element(cfg, 2, 1, 2);
        auto n = static_cast<Degree>(rs.uniform(0, top));
        auto m = static_cast<Degree>(rs.uniform(0, top));
        // (x o_n y) o_m z = sum_s (-1)^s C(n, s) x o_{n-s} (y o_{m+s} z)
        ConfElement lhs = product(product(x, n, y, cfg, engine), m, z, cfg, engine);
        ConfElement rhs;
        for (Degree s = 0; s <= n; ++s)
            rhs += product(x, n - s, product(y, m + s, z, cfg, engine), cfg, engine) * (sign_pow(s) * binomial(n, s));
        rep.record(lhs == rhs, [&] {
            return "x = " + format_conf(x, cfg) + ", y = " + format_conf(y, cfg) + ", z = " + format_conf(z, cfg) +
                   ", n = " + std::to_string(n) + ", m = " + std::to_string(m);
        });
    }
    return rep;
}

inline CheckReport check_sesqui(const AlgebraConfig& cfg, std::size_t trials, std::uint64_t seed, Engine engine) {
    require_conformal(cfg);
    CheckReport rep{"sesqui"};
    RandomSource rs(seed);
    const Degree top = 2 * cfg.max_locality();
    for (std::size_t t = 0; t < trials; ++t) {
        auto x = rs.conf_element(cfg, 3, 1, 2);
        auto y = rs.conf_element(cfg, 3, 1, 2);
        auto n = static_cast<Degree>(rs.uniform(0, top));
        ConfElement prev = n > 0 ? product(x, n - 1, y, cfg, engine) : ConfElement();
        bool left = product(apply_D(x), n, y, cfg, engine) == prev * Scalar(-static_cast<long>(n));
        bool right = product(x, n, apply_D(y), cfg, engine) ==
                     apply_D(product(x, n, y, cfg, engine)) + prev * Scalar(static_cast<long>(n));
        rep.record(left && right, [&] {
            return "x = " + format_conf(x, cfg) + ", y = " + format_conf(y, cfg) + ", n = " + std::to_string(n);
        });
    }
    return rep;
}

inline CheckReport check_locality(const AlgebraConfig& cfg, std::size_t trials, std::uint64_t seed, Engine engine) {
    require_conformal(cfg);
    CheckReport rep{"locality"};
    for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = 0; j < cfg.size(); ++j) {
            auto a = ConfElement::word(NormalWord::generator(cfg.gen(i)));
            auto b = ConfElement::word(NormalWord::generator(cfg.gen(j)));
            const Degree nb = cfg.locality(cfg.gen(j));
            bool pass = !product(a, nb - 1, b, cfg, engine).is_zero() && product(a, nb, b, cfg, engine).is_zero() &&
                        locality_of(a, b, cfg) == nb;
            rep.record(pass, [&] { return "generators " + cfg.names()[i] + ", " + cfg.names()[j]; });
        }
    RandomSource rs(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        auto x = rs.conf_element(cfg, 2, 1, 2);
        auto y = rs.conf_element(cfg, 2, 1, 2);
        const Degree N = locality_of(x, y, cfg);
        bool pass = N == 0 || !product(x, N - 1, y, cfg, engine).is_zero();
        for (Degree k = 0; k < 4 && pass; ++k) pass = product(x, N + k, y, cfg, engine).is_zero();
        rep.record(pass, [&] {
            return "x = " + format_conf(x, cfg) + ", y = " + format_conf(y, cfg) + ", N = " + std::to_string(N);
        });
    }
    return rep;
}

inline ComoduleAlgebra check_algebra(const AlgebraConfig& cfg, bool corrupt) {
    return corrupt ? ComoduleAlgebra::non_morphism_control(cfg.kind()) : ComoduleAlgebra::standard(cfg.kind());
}

inline RandomBounds pseudo_bounds() {
    RandomBounds b;
    b.max_d_degree = 2;
    b.max_word_length = 3;
    b.max_terms = 2;
    return b;
}

inline std::vector<PElement> random_args(RandomSource& rs, const AlgebraConfig& cfg, const ComoduleAlgebra& alg,
                                         std::size_t count) {
    std::vector<PElement> out;
    const auto alphabet = alphabet_of(cfg);
    for (std::size_t i = 0; i < count; ++i) {
        PElement raw = rs.pelement(alphabet);
        PElement p;
        for (const auto& [d, f] : raw.parts()) p.add(d, alg.normalize(f));
        if (p.is_zero()) p.add(0, NCPoly::monomial({Letter::v()}));
        out.push_back(std::move(p));
    }
    return out;
}

inline std::string describe_args(const std::vector<PElement>& args, const AlgebraConfig& cfg) {
    std::string s;
    for (std::size_t i = 0; i < args.size(); ++i)
        s += (i ? ", " : "") + std::string("x") + std::to_string(i + 1) + " = " + format_pelement(args[i], cfg);
    return s;
}

inline CheckReport check_pseudo_assoc(const AlgebraConfig& cfg, std::size_t trials, std::uint64_t seed, bool corrupt) {
    CheckReport rep{"pseudo-assoc"};
    const ComoduleAlgebra alg = check_algebra(cfg, corrupt);
    std::vector<ProductKind> kinds{ProductKind::P8, ProductKind::P9, ProductKind::P10, ProductKind::P11};
    if (cfg.kind() == AlgebraKind::commutative) kinds.push_back(ProductKind::P20);
    RandomSource rs(seed, pseudo_bounds());
    for (std::size_t t = 0; t < trials; ++t) {
        auto args = random_args(rs, cfg, alg, 3);
        for (ProductKind k : kinds)
            rep.record(assoc_check(k, alg, args[0], args[1], args[2]),
                       [&] { return std::string(to_string(k)) + ": " + describe_args(args, cfg); });
    }
    return rep;
}

inline CheckReport check_identity(const AlgebraConfig& cfg, std::size_t trials, std::uint64_t seed, bool corrupt) {
    CheckReport rep{"identity"};
    const ComoduleAlgebra alg = check_algebra(cfg, corrupt);
    RandomSource rs(seed, pseudo_bounds());
    for (std::size_t t = 0; t < trials; ++t) {
        auto args = random_args(rs, cfg, alg, 3);
        if (cfg.kind() == AlgebraKind::commutative) {
            std::vector<PElement> pair{args[0], args[1]};
            rep.record(eval_identity<2>(commutativity_identity(), ProductKind::P20, alg, pair).empty(),
                       [&] { return "commutativity under P20: " + describe_args(pair, cfg); });
            rep.record(eval_identity<3>(associator_identity(), ProductKind::P20, alg, args).empty(),
                       [&] { return "associator under P20: " + describe_args(args, cfg); });
        } else {
            rep.record(eval_identity<3>(associator_identity(), ProductKind::P8, alg, args).empty(),
                       [&] { return "associator under P8: " + describe_args(args, cfg); });
        }
    }
    return rep;
}

inline AlgebraConfig config_or_default(const std::string& path) {
    return path.empty() ? default_config() : load_config(path);
}

inline Engine engine_from(const std::string& name) { return name == "rewrite" ? Engine::rewrite : Engine::realize; }

inline ConfElement eval_text(const std::string& text, const AlgebraConfig& cfg, Engine engine) {
    Expr e = parse_expr(text);
    resolve(e, cfg);
    return eval(e, cfg, engine);
}

inline json result_json(const ConfElement& x, const AlgebraConfig& cfg) {
    return json{{"text", format_conf(x, cfg)}, {"terms", to_json(x, cfg)}};
}

inline int demo(const std::string& which, std::ostream& out) {
    if (which == "current") {
        AlgebraConfig cfg({"a", "b"}, {1, 1});
        auto alg = ComoduleAlgebra::trivial();
        auto a = PElement::make(NCPoly::monomial({cfg.gen(0)}));
        auto b = PElement::make(NCPoly::monomial({cfg.gen(1)}));
        out << "current pseudoalgebra H (x) k<a,b>, coaction x -> 1 (x) x\n";
        bool good = true;
        for (Degree n = 0; n <= 2; ++n) {
            PElement r = nth(ProductKind::P8, alg, a, n, b);
            good = good && r == (n == 0 ? PElement::make(NCPoly::monomial({cfg.gen(0), cfg.gen(1)})) : PElement());
            out << "(1 (x) a) o_" << n << " (1 (x) b) = " << format_pelement(r, cfg) << "\n";
        }
        bool assoc = assoc_check(ProductKind::P8, alg, a, b, a);
        out << "associative on (a, b, a): " << (assoc ? "yes" : "no") << "\n";
        return good && assoc ? ok : axiom_violation;
    }
    AlgebraConfig cfg({}, {}, AlgebraKind::commutative);
    auto weyl = ComoduleAlgebra::standard(AlgebraKind::commutative);
    auto v = PElement::make(NCPoly::monomial({Letter::v()}));
    if (which == "weyl") {
        out << "Weyl conformal algebra H (x) k[v], coaction v -> D (x) 1 + 1 (x) v\n";
        bool good = true;
        for (Degree n = 0; n <= 2; ++n) {
            PElement r = nth(ProductKind::P8, weyl, v, n, v);
            out << "(1 (x) v) o_" << n << " (1 (x) v) = " << format_pelement(r, cfg) << "\n";
            PElement expected = n == 0 ? PElement::make(NCPoly::monomial({Letter::v(), Letter::v()}))
                                : n == 1 ? -v
                                         : PElement();
            good = good && r == expected;
        }
        return good ? ok : axiom_violation;
    }
    // virasoro
    const PElement L = -v;
    out << "Virasoro element L = " << format_pelement(L, cfg) << " in the Weyl conformal algebra\n";
    bool good = true;
    for (Degree n = 0; n <= 3; ++n) {
        PElement r = comm_nth(weyl, L, n, L);
        PElement expected = n == 0 ? apply_D(L) : n == 1 ? L * Scalar(2) : PElement();
        const char* name = n == 0 ? "D L" : n == 1 ? "2 L" : "0";
        out << "[L o_" << n << " L] = " << format_pelement(r, cfg) << "   (expected " << name << ": "
            << (r == expected ? "ok" : "MISMATCH") << ")\n";
        good = good && r == expected;
    }
    return good ? ok : axiom_violation;
}

}  // namespace detail

/// Runs confcli with argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Free associative conformal algebras: normal forms, products and axiom checks.\n"
                 "Expressions: generators, D^k(expr), (x .n y) for the n-product x o_n y, sums with\n"
                 "rational coefficients such as \"(a .0 (b .1 a)) - 2/3 * D^1(b)\"."};
    app.name("confcli");
    app.require_subcommand(1);

    std::string config_path, expr_text, realized_text, engine_name = "realize", left, right, axiom, demo_name,
                                                       coaction = "standard";
    unsigned n = 0, max_k = 2, max_s = 0, max_n = 2;
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    bool text_only = false;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (default: a, b with localities 2, 3)");
    };
    auto add_engine = [&](CLI::App* sub) {
        sub->add_option("--engine", engine_name, "realize (embedding) or rewrite (axioms)")
            ->check(CLI::IsMember({"realize", "rewrite"}));
    };

    auto* reduce_cmd = app.add_subcommand("reduce", "reduce an expression to the normal-word basis");
    add_config(reduce_cmd);
    add_engine(reduce_cmd);
    auto* expr_opt = reduce_cmd->add_option("--expr", expr_text, "conformal expression");
    auto* realized_opt = reduce_cmd->add_option("--realized", realized_text,
                                                "element of H (x) k<B,v>, e.g. \"2 * D^1 <avb> - <ab>\"");
    expr_opt->excludes(realized_opt);
    reduce_cmd->add_flag("--text", text_only, "print only the normal form");

    auto* prod_cmd = app.add_subcommand("prod", "conformal n-product of two expressions");
    add_config(prod_cmd);
    add_engine(prod_cmd);
    prod_cmd->add_option("--left", left, "left factor")->required();
    prod_cmd->add_option("--n", n, "product index")->required();
    prod_cmd->add_option("--right", right, "right factor")->required();
    prod_cmd->add_flag("--text", text_only, "print only the normal form");

    auto* basis_cmd = app.add_subcommand("basis", "enumerate normal words");
    add_config(basis_cmd);
    basis_cmd->add_option("--max-k", max_k, "maximal number of products k");
    basis_cmd->add_option("--max-s", max_s, "maximal outer D power");

    auto* table_cmd = app.add_subcommand("table", "structure constants between D-free normal words");
    add_config(table_cmd);
    add_engine(table_cmd);
    table_cmd->add_option("--max-n", max_n, "maximal product index");
    table_cmd->add_option("--max-k", max_k, "maximal number of products k in each factor");

    auto* check_cmd = app.add_subcommand("check", "randomized axiom checks");
    add_config(check_cmd);
    add_engine(check_cmd);
    check_cmd->add_option("--axiom", axiom, "axiom to check")
        ->required()
        ->check(CLI::IsMember({"assoc", "sesqui", "locality", "pseudo-assoc", "identity"}));
    check_cmd->add_option("--trials", trials, "number of random cases");
    check_cmd->add_option("--seed", seed, "random seed");
    check_cmd->add_option("--coaction", coaction, "standard, or corrupt for a non-morphism negative control")
        ->check(CLI::IsMember({"standard", "corrupt"}));

    auto* demo_cmd = app.add_subcommand("demo", "current, Weyl and Virasoro examples");
    demo_cmd->add_option("name", demo_name, "current | weyl | virasoro")
        ->required()
        ->check(CLI::IsMember({"current", "weyl", "virasoro"}));

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }

    const Engine engine = detail::engine_from(engine_name);
    try {
        if (*reduce_cmd) {
            AlgebraConfig cfg = detail::config_or_default(config_path);
            detail::require_conformal(cfg);
            if (realized_opt->count() > 0) {
                PElement p = parse_realized(realized_text, cfg);
                ReduceResult r = reduce(p, cfg);
                if (auto* miss = std::get_if<NotInSpan>(&r)) {
                    err << "error: not in the span of normal words; offending monomial D^" << miss->d << " (x) "
                        << format_word(miss->witness, cfg) << "\n";
                    return not_in_span;
                }
                const auto& x = std::get<ConfElement>(r);
                if (text_only) {
                    out << format_conf(x, cfg) << "\n";
                } else {
                    json j = detail::result_json(x, cfg);
                    j["input"] = format_pelement(p, cfg);
                    out << j.dump(2) << "\n";
                }
                return ok;
            }
            if (expr_opt->count() == 0) {
                err << "error: reduce needs --expr or --realized\n";
                return input_error;
            }
            Expr e = parse_expr(expr_text);
            resolve(e, cfg);
            ConfElement x = eval(e, cfg, engine);
            if (text_only) {
                out << format_conf(x, cfg) << "\n";
            } else {
                json j = detail::result_json(x, cfg);
                j["expr"] = print_expr(e);
                j["engine"] = engine_name;
                out << j.dump(2) << "\n";
            }
            return ok;
        }
        if (*prod_cmd) {
            AlgebraConfig cfg = detail::config_or_default(config_path);
            detail::require_conformal(cfg);
            ConfElement l = detail::eval_text(left, cfg, engine);
            ConfElement r = detail::eval_text(right, cfg, engine);
            ConfElement x = detail::product(l, n, r, cfg, engine);
            if (text_only) {
                out << format_conf(x, cfg) << "\n";
            } else {
                json j = detail::result_json(x, cfg);
                j["left"] = format_conf(l, cfg);
                j["right"] = format_conf(r, cfg);
                j["n"] = n;
                j["engine"] = engine_name;
                out << j.dump(2) << "\n";
            }
            return ok;
        }
        if (*basis_cmd) {
            AlgebraConfig cfg = detail::config_or_default(config_path);
            detail::require_conformal(cfg);
            auto words = enumerate_basis(cfg, max_k, max_s);
            json j;
            j["words"] = json::array();
            for (const auto& u : words)
                j["words"].push_back(json{{"word", to_json(u, cfg)}, {"text", format_normal_word(u, cfg)}});
            j["counts"] = json::array();
            bool consistent = true;
            for (unsigned k = 0; k <= max_k; ++k) {
                std::size_t found = 0;
                for (const auto& u : words) found += (u.s == 0 && u.k() == k);
                const mpz_class expected = basis_count(cfg, k);
                consistent = consistent && expected == static_cast<unsigned long>(found);
                j["counts"].push_back(json{{"k", k}, {"count", found}, {"expected", expected.get_str()}});
            }
            j["total"] = words.size();
            j["consistent"] = consistent;
            out << j.dump(2) << "\n";
            return consistent ? ok : axiom_violation;
        }
        if (*table_cmd) {
            AlgebraConfig cfg = detail::config_or_default(config_path);
            detail::require_conformal(cfg);
            auto words = enumerate_basis(cfg, max_k, 0);
            json j = json::array();
            for (const auto& u : words)
                for (const auto& w : words)
                    for (Degree k = 0; k <= max_n; ++k) {
                        ConfElement x =
                            detail::product(ConfElement::word(u), k, ConfElement::word(w), cfg, engine);
                        j.push_back(json{{"left", to_json(u, cfg)},
                                         {"n", k},
                                         {"right", to_json(w, cfg)},
                                         {"result", to_json(x, cfg)}});
                    }
            out << j.dump(2) << "\n";
            return ok;
        }
        if (*check_cmd) {
            AlgebraConfig cfg = detail::config_or_default(config_path);
            const bool corrupt = coaction == "corrupt";
            CheckReport rep;
            if (axiom == "assoc") rep = detail::check_assoc(cfg, trials, seed, engine);
            else if (axiom == "sesqui") rep = detail::check_sesqui(cfg, trials, seed, engine);
            else if (axiom == "locality") rep = detail::check_locality(cfg, trials, seed, engine);
            else if (axiom == "pseudo-assoc") rep = detail::check_pseudo_assoc(cfg, trials, seed, corrupt);
            else rep = detail::check_identity(cfg, trials, seed, corrupt);
            out << rep.to_json(seed).dump(2) << "\n";
            if (rep.failed > 0) {
                err << "axiom " << axiom << " violated: " << *rep.counterexample << "\n";
                return axiom_violation;
            }
            return ok;
        }
        if (*demo_cmd) return detail::demo(demo_name, out);
    } catch (const ParseError& e) {
        err << "syntax error: " << e.what() << "\n";
        return input_error;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return input_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    return input_error;
}

}  // namespace confalg::cli
