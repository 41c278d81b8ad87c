#include "qdx/cli.hpp"

#include "qdx/corpus.hpp"
#include "qdx/errors.hpp"
#include "qdx/report.hpp"
#include "qdx/wmod.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace qdx {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int exit_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
    if (dynamic_cast<const CapacityExceeded*>(&e)) return kExitCapacity;
    if (dynamic_cast<const MissingModel*>(&e)) return kExitMissingModel;
    if (dynamic_cast<const MissingAlgebraicSide*>(&e)) return kExitMissingModel;
    return kExitVerification;
}

struct CommonOpts {
    std::string file;
    std::string name;
    int max_degree = 20;
    unsigned long long seed = 20240801;
    std::string format = "human";
    std::size_t bound = kDefaultGroupBound;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_file = true, bool with_name = true) {
    if (with_file) sub->add_option("file", o.file, "fixture file (.qdx)")->required();
    if (with_name) sub->add_option("name", o.name, "declaration name")->required();
    sub->add_option("--max-degree", o.max_degree, "expansion degree bound (default 20)");
    sub->add_option("--seed", o.seed, "seed for randomized corpora");
    sub->add_option("--format", o.format, "human|machine")->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--bound", o.bound, "group size cap");
}

MonPrime parse_prime_arg(const WeightedRing& R, const std::string& arg) {
    if (arg == "0") return MonPrime::make({});
    std::vector<int> vars;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        auto it = std::find(R.var_names.begin(), R.var_names.end(), cur);
        if (it == R.var_names.end()) throw UnknownReference("unknown variable '" + cur + "'");
        vars.push_back((int)(it - R.var_names.begin()));
        cur.clear();
    };
    for (char c : arg) {
        if (c == ',' || c == ' ') flush();
        else cur += c;
    }
    flush();
    return MonPrime::make(std::move(vars));
}

int cmd_hilbert(const CommonOpts& o, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    auto [R, M] = env.module_or_ideal(o.name);
    auto s = module_series(*R, M);
    auto coeffs = expand(s, o.max_degree);
    if (o.format == "machine") {
        Json j;
        j["name"] = o.name;
        j["series"] = series_json(s);
        std::vector<std::string> cs;
        for (const auto& c : coeffs) cs.push_back(c.str());
        j["expansion"] = cs;
        out << json_line(j) << "\n";
    } else {
        out << series_to_text(s) << "\n";
        out << "coefficients to degree " << o.max_degree << ":";
        for (const auto& c : coeffs) out << " " << c;
        out << "\n";
    }
    return kExitOk;
}

int cmd_degree(const CommonOpts& o, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    auto [R, M] = env.module_or_ideal(o.name);
    Rat d = degree_of(*R, M);
    if (o.format == "machine") {
        Json j;
        j["name"] = o.name;
        j["degree"] = rat_json(d);
        j["dim"] = krull_dim(*R, M);
        out << json_line(j) << "\n";
    } else {
        out << rat_to_string(d) << "\n";
    }
    return kExitOk;
}

int cmd_minprimes(const CommonOpts& o, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    auto [R, M] = env.module_or_ideal(o.name);
    auto primes = minimal_primes(*R, M);
    auto dmax = dmax_primes(*R, M);
    if (o.format == "machine") {
        Json j;
        j["name"] = o.name;
        std::vector<std::string> ps, ds;
        for (const auto& q : primes) ps.push_back(prime_to_string(*R, q));
        for (const auto& q : dmax) ds.push_back(prime_to_string(*R, q));
        j["minimal_primes"] = ps;
        j["dmax_primes"] = ds;
        out << json_line(j) << "\n";
    } else {
        for (const auto& q : primes) {
            out << prime_to_string(*R, q);
            bool in_dmax = std::find(dmax.begin(), dmax.end(), q) != dmax.end();
            out << (in_dmax ? "  [maximal dimension]" : "") << "\n";
        }
    }
    return kExitOk;
}

int cmd_length(const CommonOpts& o, const std::string& at, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    auto [R, M] = env.module_or_ideal(o.name);
    long long len;
    if (at.empty()) {
        len = module_length(*R, M);
    } else {
        len = local_length(*R, M, parse_prime_arg(*R, at));
    }
    if (o.format == "machine") {
        Json j;
        j["name"] = o.name;
        if (!at.empty()) j["at"] = at;
        j["length"] = len;
        out << json_line(j) << "\n";
    } else {
        out << len << "\n";
    }
    return kExitOk;
}

int cmd_additivity(const CommonOpts& o, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    auto [R, M] = env.module_or_ideal(o.name);
    auto rep = additivity_report(*R, M);
    if (o.format == "machine") {
        Json j = additivity_json(*R, rep);
        j["name"] = o.name;
        out << json_line(j) << "\n";
    } else {
        out << additivity_human(*R, rep);
    }
    return rep.equal ? kExitOk : kExitVerification;
}

int cmd_group_info(const CommonOpts& o, int p, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    const auto* gd = env.find_group(o.name);
    if (!gd) throw UnknownReference("no group named '" + o.name + "'");
    const auto& G = gd->group;
    Json j;
    j["name"] = o.name;
    j["degree"] = G.degree();
    j["order"] = G.order();
    if (o.format == "human")
        out << "group " << o.name << ": degree " << G.degree() << ", order " << G.order() << "\n";
    if (p >= 2) {
        auto subs = elementary_abelians(G, p);
        std::map<int, int> by_rank;
        for (const auto& A : subs) ++by_rank[subgroup_rank(A, p)];
        auto classes = pair_classes(G, p, GSet::point(G));
        std::map<int, int> classes_by_rank;
        for (const auto& c : classes) ++classes_by_rank[c.rank];
        if (o.format == "machine") {
            Json ranks = Json::array();
            for (const auto& [r, n] : by_rank) {
                Json e;
                e["rank"] = r;
                e["subgroups"] = n;
                e["classes"] = classes_by_rank[r];
                ranks.push_back(e);
            }
            j["p"] = p;
            j["elementary_abelians"] = ranks;
        } else {
            for (const auto& [r, n] : by_rank)
                out << "  rank " << r << ": " << n << " subgroup(s) in " << classes_by_rank[r]
                    << " conjugacy class(es)\n";
        }
    }
    if (o.format == "machine") out << json_line(j) << "\n";
    return kExitOk;
}

int cmd_quillen(const CommonOpts& o, bool poset, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    const auto* fd = env.find_fixture(o.name);
    if (!fd) throw UnknownReference("no fixture named '" + o.name + "'");
    const auto& f = fd->fixture;
    auto pairs = quillen_pairs(f.G, f.p, f.X);
    auto classes = pair_classes(f.G, f.p, f.X);
    auto qp = q_prime(f.G, f.p, f.X);
    auto qmax = q_prime_max(f.G, f.p, f.X);

    Json j;
    j["fixture"] = o.name;
    j["pairs"] = pairs.size();
    j["max_rank"] = max_rank(f.G, f.p, f.X);
    Json cls = Json::array();
    for (const auto& c : classes) {
        Json e;
        e["rank"] = c.rank;
        e["size"] = c.members.size();
        e["point"] = c.rep.point;
        e["maximal"] = is_maximal_pair(f.G, f.p, f.X, c.rep);
        e["weyl_order"] = weyl_order(f.G, f.X, c.rep);
        cls.push_back(e);
    }
    j["classes"] = cls;
    j["qprime"] = qp.size();
    j["qprime_max"] = qmax.size();
    if (poset) {
        Json edges = Json::array();
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (std::size_t k = 0; k < classes.size(); ++k)
                if (i != k && is_subconjugate(f.G, f.X, classes[i].rep, classes[k].rep))
                    edges.push_back(std::vector<std::size_t>{i, k});
        j["poset_edges"] = edges;
    }
    if (o.format == "machine") {
        out << json_line(j) << "\n";
    } else {
        out << "fixture " << o.name << ": " << pairs.size() << " pairs, " << classes.size()
            << " classes, |Q'| = " << qp.size() << ", |Q'_max| = " << qmax.size()
            << ", max rank = " << j["max_rank"] << "\n";
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const auto& c = classes[i];
            out << "  class " << i << ": rank " << c.rank << ", size " << c.members.size()
                << ", |W| = " << weyl_order(f.G, f.X, c.rep)
                << (is_maximal_pair(f.G, f.p, f.X, c.rep) ? ", maximal" : "") << "\n";
        }
        if (poset)
            for (const auto& e : j["poset_edges"])
                out << "  class " << e[0] << " <= class " << e[1] << "\n";
    }
    return kExitOk;
}

int cmd_invariants(const CommonOpts& o, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    const auto* md = env.find_model(o.name);
    if (!md) throw UnknownReference("no model named '" + o.name + "'");
    const auto* so = std::get_if<SeriesOnlyModel>(&md->model);
    if (!so || !so->action)
        throw MissingModel("model '" + o.name + "' has no action to check against");
    int D = std::max(o.max_degree, 40);
    auto dims = invariant_truncation(*so->action, D);
    bool match = series_matches_action(*so, D);
    if (o.format == "machine") {
        Json j;
        j["model"] = o.name;
        j["max_degree"] = D;
        j["truncation"] = dims;
        j["matches_series"] = match;
        out << json_line(j) << "\n";
    } else {
        out << "invariant truncation to degree " << D << ":";
        for (auto d : dims) out << " " << d;
        out << "\nstored series " << (match ? "matches" : "DOES NOT match") << "\n";
    }
    return match ? kExitOk : kExitVerification;
}

int cmd_wmod_check(const CommonOpts& o, int count, std::ostream& out) {
    auto res = suite_wmod(o.seed, count);
    auto res2 = suite_tensor_length(o.seed + 1, std::max(count / 2, 1));
    if (o.format == "machine") {
        Json j;
        j["seed"] = o.seed;
        j["wmod_checked"] = res.checked;
        j["wmod_pass"] = res.pass;
        j["tensor_checked"] = res2.checked;
        j["tensor_pass"] = res2.pass;
        if (!res.pass) j["wmod_detail"] = res.detail;
        if (!res2.pass) j["tensor_detail"] = res2.detail;
        out << json_line(j) << "\n";
    } else {
        out << (res.pass ? "PASS" : "FAIL") << " induced-module suite: " << res.checked
            << " instances (seed " << o.seed << ")" << (res.pass ? "" : " -- " + res.detail)
            << "\n";
        out << (res2.pass ? "PASS" : "FAIL") << " tensor-length suite: " << res2.checked
            << " instances" << (res2.pass ? "" : " -- " + res2.detail) << "\n";
    }
    return res.pass && res2.pass ? kExitOk : kExitVerification;
}

int cmd_verify_main(const CommonOpts& o, const std::vector<std::string>& which,
                    std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    bool all_ok = true;
    bool any = false;
    for (const auto& fd : env.fixtures) {
        if (!which.empty() && std::find(which.begin(), which.end(), fd.name) == which.end())
            continue;
        any = true;
        all_ok = verify_fixture_and_report(fd.name, fd, o.max_degree, o.format, out) && all_ok;
    }
    if (!any) throw UnknownReference("no matching fixture in '" + o.file + "'");
    return all_ok ? kExitOk : kExitVerification;
}

int cmd_oracle(const CommonOpts& o, std::ostream& out) {
    Environment env = parse_environment(read_file(o.file), o.bound);
    auto [R, M] = env.module_or_ideal(o.name);
    // Brute-force recomputation per summand, with shifts applied.
    std::vector<Int> brute(o.max_degree + 1, Int(0));
    for (const auto& s : M.summands) {
        auto counts = hilbert_brute(*R, s.ideal, std::max(o.max_degree - s.shift, -1));
        for (int d = 0; d + s.shift <= o.max_degree && d < (int)counts.size(); ++d)
            brute[d + s.shift] += counts[d];
    }
    auto fast = expand(module_series(*R, M), o.max_degree);
    bool match = fast == brute;
    if (o.format == "machine") {
        Json j;
        j["name"] = o.name;
        std::vector<std::string> a, b;
        for (const auto& c : fast) a.push_back(c.str());
        for (const auto& c : brute) b.push_back(c.str());
        j["series_expansion"] = a;
        j["brute_counts"] = b;
        j["match"] = match;
        out << json_line(j) << "\n";
    } else {
        out << "series:";
        for (const auto& c : fast) out << " " << c;
        out << "\nbrute: ";
        for (const auto& c : brute) out << " " << c;
        out << "\n" << (match ? "MATCH" : "MISMATCH") << "\n";
    }
    return match ? kExitOk : kExitVerification;
}

int cmd_selftest(const CommonOpts& o, bool list, std::ostream& out) {
    auto entries = corpus_entries();
    if (list) {
        for (const auto& e : entries) {
            if (o.format == "machine") {
                Json j;
                j["entry"] = e.name;
                j["note"] = e.note;
                j["randomized"] = e.randomized;
                out << json_line(j) << "\n";
            } else {
                out << e.name << ": " << e.note << "\n";
            }
        }
        return kExitOk;
    }
    if (o.format == "human") out << "selftest corpus (seed " << o.seed << ")\n";
    bool all_ok = true;
    for (const auto& e : entries)
        all_ok = run_corpus_entry(e.name, o.seed, o.max_degree, o.format, out) && all_ok;
    if (o.format == "human") out << (all_ok ? "all entries passed\n" : "FAILURES present\n");
    return all_ok ? kExitOk : kExitVerification;
}

} // namespace

bool verify_fixture_and_report(const std::string& entry_name, const Environment::FixtureDecl& fd,
                               int max_degree, const std::string& format, std::ostream& out) {
    auto gates = run_series_gates(fd.fixture, std::max(40, max_degree));
    auto rep = verify_main(fd.fixture);
    bool ok = rep.equal && rep.dim_check && gates.all_passed;
    if (fd.expected_lhs && *fd.expected_lhs != rep.lhs) ok = false;
    if (fd.expected_rhs && *fd.expected_rhs != rep.rhs) ok = false;
    std::optional<CorrespondenceReport> corr;
    if (fd.fixture.algebraic) {
        corr = correspondence_check(fd.fixture);
        ok = ok && corr->ok;
        if (rep.term_matching)
            ok = ok && rep.term_matching->all_terms_equal && rep.term_matching->totals_agree;
    }
    if (format == "machine") {
        Json j = main_report_json(rep);
        j["gates"] = gate_json(gates);
        if (corr) j["correspondence"] = correspondence_json(*corr);
        j["entry"] = entry_name;
        j["pass"] = ok;
        out << json_line(j) << "\n";
    } else {
        out << (ok ? "PASS " : "FAIL ") << entry_name << ": " << main_report_human(rep);
        if (!gates.all_passed) out << "  series gate FAILED\n";
        for (const auto& u : gates.unverified) out << "  unverified fixture series: " << u << "\n";
        if (corr) out << "  " << correspondence_human(*corr);
    }
    return ok;
}

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact degree computations for graded modules over weighted polynomial rings,\n"
                 "with Quillen-category verification of the degree additivity formulas"};
    app.name("qdx");
    app.require_subcommand(1);

    CommonOpts hilbert_o, degree_o, minprimes_o, length_o, additivity_o, group_o, quillen_o,
        invariants_o, wmod_o, verify_o, oracle_o, selftest_o;
    std::string length_at;
    int group_p = 0;
    bool quillen_poset = false;
    int wmod_count = 100;
    std::vector<std::string> verify_which;
    bool selftest_list = false;

    auto* c_hilbert = app.add_subcommand("hilbert", "Hilbert series of a module or ideal quotient");
    add_common(c_hilbert, hilbert_o);
    auto* c_degree = app.add_subcommand("degree", "degree (leading Laurent coefficient at t=1)");
    add_common(c_degree, degree_o);
    auto* c_minprimes = app.add_subcommand("minprimes", "minimal primes over the annihilator");
    add_common(c_minprimes, minprimes_o);
    auto* c_length = app.add_subcommand("length", "module length, or local length at --at");
    add_common(c_length, length_o);
    c_length->add_option("--at", length_at, "prime as comma-separated variables, or 0");
    auto* c_additivity = app.add_subcommand("additivity", "degree additivity over minimal primes");
    add_common(c_additivity, additivity_o);
    auto* c_group = app.add_subcommand("group-info", "group order and elementary abelian census");
    add_common(c_group, group_o);
    c_group->add_option("--p", group_p, "prime for the elementary abelian census");
    auto* c_quillen = app.add_subcommand("quillen", "Quillen pairs and classes of a fixture");
    add_common(c_quillen, quillen_o);
    c_quillen->add_flag("--poset", quillen_poset, "emit the subconjugacy order on classes");
    auto* c_invariants =
        app.add_subcommand("invariants", "invariant truncation check for a series model");
    add_common(c_invariants, invariants_o);
    auto* c_wmod = app.add_subcommand("wmod-check", "randomized induced-module suite");
    add_common(c_wmod, wmod_o, false, false);
    c_wmod->add_option("--count", wmod_count, "number of randomized instances");
    auto* c_verify = app.add_subcommand("verify-main", "verify the degree formula on fixtures");
    add_common(c_verify, verify_o, true, false);
    c_verify->add_option("fixtures", verify_which, "fixture names (default: all)");
    auto* c_oracle = app.add_subcommand("oracle", "brute-force recomputation of a Hilbert series");
    add_common(c_oracle, oracle_o);
    auto* c_selftest = app.add_subcommand("selftest", "run the bundled corpus");
    add_common(c_selftest, selftest_o, false, false);
    c_selftest->add_flag("--list", selftest_list, "list corpus entries and provenance notes");

    std::vector<std::string> argv_s = {"qdx"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_s) argv.push_back(s.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (app.got_subcommand(c_hilbert)) return cmd_hilbert(hilbert_o, out);
        if (app.got_subcommand(c_degree)) return cmd_degree(degree_o, out);
        if (app.got_subcommand(c_minprimes)) return cmd_minprimes(minprimes_o, out);
        if (app.got_subcommand(c_length)) return cmd_length(length_o, length_at, out);
        if (app.got_subcommand(c_additivity)) return cmd_additivity(additivity_o, out);
        if (app.got_subcommand(c_group)) return cmd_group_info(group_o, group_p, out);
        if (app.got_subcommand(c_quillen)) return cmd_quillen(quillen_o, quillen_poset, out);
        if (app.got_subcommand(c_invariants)) return cmd_invariants(invariants_o, out);
        if (app.got_subcommand(c_wmod)) return cmd_wmod_check(wmod_o, wmod_count, out);
        if (app.got_subcommand(c_verify)) return cmd_verify_main(verify_o, verify_which, out);
        if (app.got_subcommand(c_oracle)) return cmd_oracle(oracle_o, out);
        if (app.got_subcommand(c_selftest)) return cmd_selftest(selftest_o, selftest_list, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e);
    }
    err << "no subcommand given\n";
    return kExitParse;
}

} // namespace qdx
