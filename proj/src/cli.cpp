#include "lcf/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "lcf/cantor.hpp"
#include "lcf/contfrac.hpp"
#include "lcf/cylinder.hpp"
#include "lcf/dimension.hpp"
#include "lcf/dirichlet.hpp"
#include "lcf/stochastic.hpp"

namespace lcf {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "laurentcf 1.0.0";

struct PrimeValidator : CLI::Validator {
    PrimeValidator() {
        name_ = "PRIME";
        func_ = [](const std::string& str) {
            unsigned long v = 0;
            try {
                v = std::stoul(str);
            } catch (...) {
                return std::string("expected a prime number");
            }
            if (v > 0xFFFFFFFFul || !FieldSpec::is_prime(static_cast<std::uint32_t>(v)))
                return std::string("q must be a prime >= 2");
            return std::string();
        };
    }
};
const PrimeValidator kPrime;

json rational_json(const Rational& r) {
    return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// P/Q from "num/den" with symbolic polynomial halves.
RationalFn parse_rational_arg(FieldSpec f, const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("--rational: expected '<poly>/<poly>'");
    Poly num = poly_from_string(f, text.substr(0, slash));
    Poly den = poly_from_string(f, text.substr(slash + 1));
    return make_rational_fn(num, den);
}

std::pair<long, long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("--n-range: expected 'a..b'");
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
}

Rational parse_rational_number(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational r(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        Rational r(BigInt(digits), big_pow(10, static_cast<unsigned long>(s.size() - dot - 1)));
        r.canonicalize();
        return r;
    }
    return Rational(BigInt(s));
}

ApproxFunction parse_phi_dirichlet(const std::string& spec) {
    if (spec == "1/t") return ApproxFunction::reciprocal();
    if (spec.rfind("c:", 0) == 0) return ApproxFunction::scaled(parse_rational_number(spec.substr(2)));
    if (spec.rfind("pow:", 0) == 0)
        return ApproxFunction::power_law(parse_rational_number(spec.substr(4)));
    if (spec.rfind("table:", 0) == 0) {
        std::ifstream in(spec.substr(6));
        if (!in) throw std::invalid_argument("--phi: cannot open table file '" + spec.substr(6) + "'");
        std::map<long, Rational> tbl;
        long m;
        std::string value;
        while (in >> m >> value) tbl[m] = parse_rational_number(value);
        return ApproxFunction::table(std::move(tbl));
    }
    throw std::invalid_argument("--phi: expected '1/t', 'c:<rational>', 'pow:<rational>' or 'table:<file>'");
}

const char* case_name(DimCase c) {
    switch (c) {
        case DimCase::BZero: return "B=0";
        case DimCase::BFinite: return "0<B<inf";
        case DimCase::BInfBOne: return "B=inf,b=1";
        case DimCase::BInfBFinite: return "B=inf,1<b<inf";
        case DimCase::BInfBInf: return "B=inf,b=inf";
        case DimCase::GCase: return "G";
        case DimCase::Inconclusive: return "inconclusive";
    }
    return "?";
}

json invariant_json(double v) {
    if (std::isinf(v)) return json("inf");
    return json(v);
}

// ---------------------------------------------------------------------------

struct ExpandArgs {
    std::uint32_t q = 2;
    std::string rational, series;
    long n_max = -1;
    bool as_json = false;
};

int cmd_expand(const ExpandArgs& a, std::ostream& out) {
    FieldSpec f(a.q);
    CFExpansion cf{f, {}, 0, false};
    if (!a.rational.empty()) {
        RationalFn x = parse_rational_arg(f, a.rational);
        cf = expand_rational(divrem(x.num, x.den).second, x.den);
        if (a.n_max >= 0 && cf.quotients.size() > static_cast<std::size_t>(a.n_max)) {
            cf.quotients.erase(cf.quotients.begin() + a.n_max, cf.quotients.end());
            cf.certified = std::min(cf.certified, static_cast<std::size_t>(a.n_max));
            cf.terminated = false;
        }
    } else if (!a.series.empty()) {
        cf = expand_truncated(series_from_string(f, a.series), a.n_max);
    } else {
        throw std::invalid_argument("--rational or --series is required");
    }

    if (a.as_json) {
        json j{{"q", a.q}, {"certified", cf.certified}, {"terminated", cf.terminated}};
        j["quotients"] = json::array();
        for (const Poly& p : cf.quotients)
            j["quotients"].push_back(json{{"poly", to_string(p)}, {"deg", deg(p)}});
        out << j.dump() << "\n";
    } else {
        out << "quotients: " << cf.quotients.size() << " (certified " << cf.certified
            << (cf.terminated ? ", terminated" : "") << ")\n";
        for (std::size_t i = 0; i < cf.quotients.size(); ++i)
            out << "A_" << i + 1 << " = " << to_string(cf.quotients[i])
                << "   deg " << deg(cf.quotients[i]) << (i < cf.certified ? "" : "   [uncertified]")
                << "\n";
    }
    return 0;
}

struct MeasureArgs {
    std::uint32_t q = 2;
    int k = 1;
    int m = -1;
    int tail_from = -1;
    bool as_json = false;
};

int cmd_measure(const MeasureArgs& a, std::ostream& out) {
    FieldSpec f(a.q);
    if ((a.m < 0) == (a.tail_from < 0))
        throw std::invalid_argument("exactly one of --m and --tail-from is required");
    if (a.m >= 0) {
        BigInt count = count_cylinders(f, a.m, a.k);
        Rational measure = measure_degree_sum(f, a.m, a.k);
        if (a.as_json) {
            json j{{"q", a.q},
                   {"k", a.k},
                   {"m", a.m},
                   {"count", count.get_str()},
                   {"measure_num", measure.get_num().get_str()},
                   {"measure_den", measure.get_den().get_str()}};
            out << j.dump() << "\n";
        } else {
            out << "cylinders with degree sum " << a.m << ": " << count.get_str() << "\n"
                << "measure: " << to_string(measure) << " ~ " << fmt_double(to_double(measure))
                << "\n";
        }
    } else {
        Rational measure = tail_measure(f, a.tail_from, a.k);
        if (a.as_json) {
            json j{{"q", a.q},
                   {"k", a.k},
                   {"tail_from", a.tail_from},
                   {"measure_num", measure.get_num().get_str()},
                   {"measure_den", measure.get_den().get_str()}};
            out << j.dump() << "\n";
        } else {
            out << "tail measure (degree sum >= " << a.tail_from << "): " << to_string(measure)
                << " ~ " << fmt_double(to_double(measure)) << "\n";
        }
    }
    return 0;
}

struct CountArgs {
    std::uint32_t q = 2;
    int k = 1;
    int m = 1;
    bool as_json = false;
};

int cmd_count(const CountArgs& a, std::ostream& out) {
    FieldSpec f(a.q);
    BigInt count = count_cylinders(f, a.m, a.k);
    if (a.as_json) {
        out << json{{"q", a.q}, {"k", a.k}, {"m", a.m}, {"count", count.get_str()}}.dump() << "\n";
    } else {
        out << count.get_str() << "\n";
    }
    return 0;
}

struct DimensionArgs {
    std::uint32_t q = 2;
    int k = 1;
    std::string phi;
    std::string set = "F";
    int M = -1;
    bool as_json = false;
};

int cmd_dimension(const DimensionArgs& a, std::ostream& out) {
    FieldSpec f(a.q);
    GrowthFunction phi = GrowthFunction::parse(a.phi);
    phi.clamp_at(a.k);
    DimensionResult res = a.set == "G" ? dim_G(f, a.k, phi) : dim_F(f, a.k, phi);
    double finite_M_value = std::numeric_limits<double>::quiet_NaN();
    if (a.M >= 2 && res.tag == DimCase::BFinite)
        finite_M_value = solve_s_kM(f, a.k, res.invariants.B, a.M);

    if (a.as_json) {
        json j{{"q", a.q},
               {"k", a.k},
               {"phi", phi.description()},
               {"set", a.set},
               {"case", case_name(res.tag)},
               {"value", res.value},
               {"B", invariant_json(res.invariants.B)},
               {"b", invariant_json(res.invariants.b)},
               {"a", invariant_json(res.invariants.a)},
               {"estimate", res.invariants.estimate},
               {"residual", res.solver.residual},
               {"iterations", res.solver.iterations}};
        j["exact"] = res.exact ? rational_json(*res.exact) : json(nullptr);
        if (!std::isnan(finite_M_value)) {
            j["M"] = a.M;
            j["value_M"] = finite_M_value;
        }
        out << j.dump() << "\n";
    } else {
        out << "dim_H " << (a.set == "G" ? "G" : "F") << "_k(Phi) [" << case_name(res.tag)
            << "] = " << fmt_double(res.value);
        if (res.exact) out << " = " << to_string(*res.exact);
        out << "\n";
        if (!std::isnan(finite_M_value))
            out << "s_{k,M}(B) with M = " << a.M << ": " << fmt_double(finite_M_value) << "\n";
    }
    return 0;
}

struct CantorArgs {
    std::uint32_t q = 2;
    int k = 2;
    double B = 1.0;
    int M = 2;
    double eps = 0.1;
    int depth = 0;
    std::string relaxed;
    double budget = 1e7;
    bool as_json = false;
    bool as_csv = false;
};

int cmd_cantor(const CantorArgs& a, std::ostream& out) {
    FieldSpec f(a.q);
    std::vector<long> terms;
    if (!a.relaxed.empty()) {
        std::stringstream ss(a.relaxed);
        std::string tok;
        while (std::getline(ss, tok, ',')) terms.push_back(std::stol(tok));
    }
    CantorParams params = terms.empty()
                              ? CantorParams::strict_mode(f, a.k, a.B, a.M, a.eps, a.budget)
                              : CantorParams::relaxed(f, a.k, a.B, a.M, a.eps, terms, a.budget);
    int depth = a.depth;
    if (depth <= 0) depth = static_cast<int>(params.seq.term_long(1)) + a.k;

    MassConservationReport cons = check_mass_conservation(params, depth);
    HolderReport holder = params.seq.strict_mode() && depth >= params.seq.term_long(1)
                              ? check_holder(params, depth)
                              : holder_scan(params, depth);
    auto profile = local_dimension_profile(params, depth);

    if (a.as_csv) {
        out << "order,nodes,min_ratio,mean_ratio,max_ratio\n";
        for (const auto& row : profile)
            out << row.order << ',' << row.nodes << ',' << fmt_double(row.min_ratio) << ','
                << fmt_double(row.mean_ratio) << ',' << fmt_double(row.max_ratio) << "\n";
        return 0;
    }
    if (a.as_json) {
        json j{{"q", a.q},
               {"k", a.k},
               {"B", a.B},
               {"M", a.M},
               {"eps", a.eps},
               {"s", params.s},
               {"strict", params.seq.strict_mode()},
               {"n1", params.seq.term_long(1)},
               {"depth", depth},
               {"threshold", params.s - params.eps},
               {"mass_conservation",
                json{{"nodes", cons.nodes_checked}, {"max_abs_error", cons.max_abs_error}}},
               {"holder", json{{"checked", holder.checked},
                               {"violations", holder.violations},
                               {"all_pass", holder.all_pass},
                               {"worst_ratio", holder.worst_ratio},
                               {"worst_order", holder.worst_order},
                               {"certifying", holder.strict_mode}}}};
        json alphas = json::array();
        for (double al : params.alphas) alphas.push_back(al);
        j["alphas"] = alphas;
        j["profile"] = json::array();
        for (const auto& row : profile)
            j["profile"].push_back(json{{"order", row.order},
                                        {"nodes", row.nodes},
                                        {"min_ratio", row.min_ratio},
                                        {"mean_ratio", row.mean_ratio},
                                        {"max_ratio", row.max_ratio}});
        out << j.dump() << "\n";
        return holder.all_pass ? 0 : 1;
    }
    out << (params.seq.strict_mode() ? "strict" : "relaxed (non-certifying)") << " construction, s = "
        << fmt_double(params.s) << ", n_1 = " << params.seq.term_long(1) << ", depth " << depth << "\n";
    out << "mass conservation: " << cons.nodes_checked << " nodes, max error "
        << fmt_double(cons.max_abs_error) << "\n";
    out << "holder (threshold " << fmt_double(params.s - params.eps) << "): " << holder.checked
        << " sets checked, " << holder.violations << " violations, worst ratio "
        << fmt_double(holder.worst_ratio) << (holder.all_pass ? "  PASS" : "  FAIL") << "\n";
    return holder.all_pass ? 0 : 1;
}

struct McArgs {
    std::uint32_t q = 2;
    long n_samples = 10000;
    std::uint64_t seed = 1;
    int precision = -1;
    std::string stat = "degree";
    int k = 1;
    std::string phi = "linear:1";
    std::string n_range = "1..8";
    std::string pos = "1";
};

int cmd_mc(const McArgs& a, std::ostream& out) {
    FieldSpec f(a.q);
    if (a.stat == "degree") {
        int position = static_cast<int>(std::stol(a.pos));
        SamplerConfig cfg{f, a.precision > 0 ? a.precision : default_precision(position),
                          a.n_samples, a.seed, 4096};
        DegreeHistogram h = degree_distribution(cfg, position);
        out << "j,exact,empirical,z,count\n";
        for (int j = 1; j < static_cast<int>(h.counts.size()); ++j) {
            if (h.counts[static_cast<std::size_t>(j)] == 0 && j > 12) continue;
            Rational p = degree_law(f, j);
            out << j << ',' << to_string(p) << ',' << fmt_double(h.empirical(j)) << ','
                << fmt_double(h.z_score(f, j)) << ',' << h.counts[static_cast<std::size_t>(j)]
                << "\n";
        }
        out << "# used=" << h.used << " discarded=" << h.discarded << "\n";
        return 0;
    }
    if (a.stat == "indep") {
        auto comma = a.pos.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--pos: expected 'i,j' for the indep statistic");
        int pi = static_cast<int>(std::stol(a.pos.substr(0, comma)));
        int pj = static_cast<int>(std::stol(a.pos.substr(comma + 1)));
        SamplerConfig cfg{f, a.precision > 0 ? a.precision : default_precision(std::max(pi, pj)),
                          a.n_samples, a.seed, 4096};
        JointHistogram joint = collect_joint(cfg, pi, pj);
        IndependenceReport rep = independence_report(f, joint);
        out << "key,value\n";
        out << "statistic," << fmt_double(rep.statistic) << "\n";
        out << "df," << rep.df << "\n";
        out << "p_value," << fmt_double(rep.p_value) << "\n";
        out << "cutoff," << rep.cutoff << "\n";
        out << "used," << rep.used << "\n";
        out << "discarded," << rep.discarded << "\n";
        return 0;
    }
    if (a.stat == "tail") {
        auto [lo, hi] = parse_range(a.n_range);
        GrowthFunction phi = GrowthFunction::parse(a.phi);
        phi.clamp_at(a.k);
        SamplerConfig cfg{f,
                          a.precision > 0 ? a.precision
                                          : default_precision(static_cast<int>(hi) + a.k),
                          a.n_samples, a.seed, 4096};
        TailReport rep = tail_event_frequency(cfg, a.k, phi, lo, hi);
        out << "n,threshold,exact,empirical,z,used,discarded\n";
        for (const TailRow& row : rep.rows)
            out << row.n << ',' << row.threshold << ',' << to_string(row.exact) << ','
                << fmt_double(row.empirical()) << ',' << fmt_double(row.z_score()) << ','
                << row.used << ',' << row.discarded << "\n";
        out << "# mean_hits=" << fmt_double(rep.mean_hits)
            << (rep.truncated ? " (range truncated at n=" + std::to_string(rep.n_hi_effective) + ")"
                              : "")
            << "\n";
        return 0;
    }
    throw std::invalid_argument("--stat: expected degree, indep or tail");
}

struct DirichletArgs {
    std::uint32_t q = 2;
    std::string x;
    std::string phi = "1/t";
    std::string n_range = "1..10";
    bool as_json = false;
};

int cmd_dirichlet(const DirichletArgs& a, std::ostream& out) {
    FieldSpec f(a.q);
    ApproxFunction phi = parse_phi_dirichlet(a.phi);
    auto [lo, hi] = parse_range(a.n_range);
    ImprovabilityVerdict v = a.x.find("int=") != std::string::npos
                                 ? is_improvable(series_from_string(f, a.x), phi, lo, hi)
                                 : is_improvable(parse_rational_arg(f, a.x), phi, lo, hi);
    if (a.as_json) {
        json j{{"q", a.q},
               {"phi", phi.description()},
               {"holds", v.holds_all},
               {"n_lo", v.n_lo},
               {"n_hi", v.n_hi},
               {"n_hi_checked", v.n_hi_checked},
               {"clipped", v.clipped},
               {"finite_range", true}};
        j["first_fail_n"] = v.first_fail_n ? json(*v.first_fail_n) : json(nullptr);
        out << j.dump() << "\n";
    } else {
        out << "criterion " << (v.holds_all ? "holds" : "fails") << " on n in [" << v.n_lo << ", "
            << v.n_hi_checked << "]";
        if (v.first_fail_n) out << ", first failure at n = " << *v.first_fail_n;
        if (v.clipped) out << " (range clipped)";
        out << "  [finite-range verdict]\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Continued fractions over F_q((z^-1)): exact measures, dimensions, Cantor lower bounds"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(0, 1);

    ExpandArgs ea;
    auto* expand = app.add_subcommand("expand", "Continued-fraction expansion of a series or rational");
    expand->add_option("--q", ea.q, "field size (prime)")->required()->check(kPrime);
    expand->add_option("--rational", ea.rational, "input as '<poly>/<poly>'");
    expand->add_option("--series", ea.series, "input as 'int=<poly>; frac=c1,...,cN'");
    expand->add_option("--n-max", ea.n_max, "cap on the number of quotients");
    expand->add_flag("--json", ea.as_json);

    MeasureArgs ma;
    auto* measure = app.add_subcommand("measure", "Exact Haar measure of degree-sum events");
    measure->add_option("--q", ma.q, "field size (prime)")->required()->check(kPrime);
    measure->add_option("--k", ma.k, "number of consecutive quotients")->required();
    measure->add_option("--m", ma.m, "degree sum");
    measure->add_option("--tail-from", ma.tail_from, "measure of degree sum >= M");
    measure->add_flag("--json", ma.as_json);

    CountArgs ca;
    auto* count = app.add_subcommand("count", "Number of cylinders with a given degree sum");
    count->add_option("--q", ca.q, "field size (prime)")->required()->check(kPrime);
    count->add_option("--k", ca.k, "order")->required();
    count->add_option("--m", ca.m, "degree sum")->required();
    count->add_flag("--json", ca.as_json);

    DimensionArgs da;
    auto* dimension = app.add_subcommand("dimension", "Hausdorff dimension of F_k(Phi) / G_k(Phi)");
    dimension->add_option("--q", da.q, "field size (prime)")->required()->check(kPrime);
    dimension->add_option("--k", da.k, "number of consecutive quotients")->required();
    dimension->add_option("--phi", da.phi, "growth preset: linear:B, power:c, exp:b[:p], log")->required();
    dimension->add_option("--set", da.set, "F or G")->check(CLI::IsMember({"F", "G"}));
    dimension->add_option("--M", da.M, "also solve the M-term truncated equation");
    dimension->add_flag("--json", da.as_json);

    CantorArgs na;
    auto* cantor = app.add_subcommand("cantor", "Lower-bound Cantor construction checks");
    cantor->add_option("--q", na.q, "field size (prime)")->required()->check(kPrime);
    cantor->add_option("--k", na.k, "window width")->required();
    cantor->add_option("--B", na.B, "linear growth slope")->required();
    cantor->add_option("--M", na.M, "degree cap off the windows")->required();
    cantor->add_option("--eps", na.eps, "dimension slack (0 < eps < s - 1/2)")->required();
    cantor->add_option("--depth", na.depth, "enumeration depth (default n_1 + k)");
    cantor->add_option("--relaxed", na.relaxed, "comma-separated n_j for relaxed mode");
    cantor->add_option("--budget", na.budget, "enumeration budget")
        ->envname("LAURENTCF_BUDGET");
    cantor->add_flag("--json", na.as_json);
    cantor->add_flag("--csv", na.as_csv);

    McArgs sa;
    auto* mc = app.add_subcommand("mc", "Monte Carlo verification against exact laws");
    mc->add_option("--q", sa.q, "field size (prime)")->required()->check(kPrime);
    mc->add_option("--n-samples", sa.n_samples, "sample count")->required();
    mc->add_option("--seed", sa.seed, "generator seed");
    mc->add_option("--precision", sa.precision, "coefficients per sample");
    mc->add_option("--stat", sa.stat, "degree | indep | tail")->required();
    mc->add_option("--k", sa.k, "window width (tail)");
    mc->add_option("--phi", sa.phi, "growth preset (tail)");
    mc->add_option("--n-range", sa.n_range, "a..b (tail)");
    mc->add_option("--pos", sa.pos, "position i, or i,j for indep");

    DirichletArgs ra;
    auto* dirichlet = app.add_subcommand("dirichlet", "phi-Dirichlet improvability criterion");
    dirichlet->add_option("--q", ra.q, "field size (prime)")->required()->check(kPrime);
    dirichlet->add_option("--x", ra.x, "series 'int=..; frac=..' or rational '<poly>/<poly>'")->required();
    dirichlet->add_option("--phi", ra.phi, "1/t | c:<rational> | pow:<tau> | table:<file>");
    dirichlet->add_option("--n-range", ra.n_range, "a..b");
    dirichlet->add_flag("--json", ra.as_json);

    std::vector<const char*> argv;
    argv.push_back("laurentcf");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*expand) return cmd_expand(ea, out);
        if (*measure) return cmd_measure(ma, out);
        if (*count) return cmd_count(ca, out);
        if (*dimension) return cmd_dimension(da, out);
        if (*cantor) return cmd_cantor(na, out);
        if (*mc) return cmd_mc(sa, out);
        if (*dirichlet) return cmd_dirichlet(ra, out);
        out << app.help();
        return 2;
    } catch (const BudgetError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lcf
