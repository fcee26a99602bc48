#include "tdilp/cli.hpp"

#include "tdilp/json_io.hpp"
#include "tdilp/kernelizer.hpp"
#include "tdilp/oracle.hpp"
#include "tdilp/reductions.hpp"
#include "tdilp/solver.hpp"
#include "tdilp/structure.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <fstream>
#include <functional>
#include <sstream>

namespace tdilp::cli {

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << text;
}

Json read_json(const std::string& path)
{
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

IlpInstance read_instance(const std::string& path)
{
    return parse_instance(read_file(path));
}

TreedepthDecomposition read_treedepth(const std::string& path)
{
    auto w = witness_from_json(read_json(path));
    if (auto* t = std::get_if<TreedepthDecomposition>(&w))
        return *t;
    throw InputError(path + ": expected a treedepth witness");
}

std::vector<Integer> parse_values(const std::string& csv)
{
    std::vector<Integer> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto v = parse_integer(item);
        if (!v)
            throw InputError("not an integer: '" + item + "'");
        out.push_back(*v);
    }
    return out;
}

std::vector<std::int64_t> to_small(const std::vector<Integer>& values)
{
    std::vector<std::int64_t> out;
    for (const auto& v : values) {
        auto s = to_int64(v);
        if (!s)
            throw InputError("value too large for the oracle");
        out.push_back(*s);
    }
    return out;
}

/// "2^a + b" for values just above a power of two, else the decimal value.
std::string describe(const BoundValue& v)
{
    if (!v)
        return "> 2^(2^20)";
    std::string text = to_string(*v);
    if (*v < 1024)
        return text;
    unsigned top = boost::multiprecision::msb(*v);
    Integer rest = *v - (Integer(1) << top);
    if (rest >= 1024)
        return text;
    std::string form = "2^" + std::to_string(top);
    if (rest > 0)
        form += "+" + to_string(rest);
    return text.size() > 40 ? form : text + " (" + form + ")";
}

int height_of(const TreedepthDecomposition& t)
{
    return t.size() == 0 ? 0 : t.height();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Treedepth-parameterized ILP toolkit"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Cap on OpenMP threads")->check(CLI::NonNegativeNumber);

    std::function<int()> action;

    // analyze
    std::string file;
    std::string witness_out;
    auto* analyze = app.add_subcommand("analyze", "Print instance and primal graph statistics");
    analyze->add_option("file", file)->required();
    analyze->add_option("-o,--witness-out", witness_out, "Write the treedepth witness here");
    analyze->callback([&] {
        action = [&] {
            IlpInstance inst = read_instance(file);
            Graph g = build_primal_graph(inst);
            int largest = 0;
            auto comps = g.components();
            for (const auto& c : comps)
                largest = std::max<int>(largest, static_cast<int>(c.size()));
            TreedepthDecomposition t = decompose(g);
            bool exact = largest <= 20;
            out << "variables: " << inst.num_variables() << "\n";
            out << "constraints: " << inst.num_constraints() << "\n";
            out << "ell: " << to_string(max_abs_coefficient(inst)) << "\n";
            out << "primal edges: " << g.num_edges() << "\n";
            out << "components: " << comps.size() << "\n";
            out << "treedepth: " << (exact ? "" : "<= ") << height_of(t) << (exact ? " (exact)" : " (dfs)")
                << "\n";
            if (t.size() > 0) {
                auto depth = t.depths();
                int deepest = static_cast<int>(std::max_element(depth.begin(), depth.end()) - depth.begin());
                out << "witness path:";
                for (int v : t.root_path(deepest))
                    out << " " << inst.variables()[v].name;
                out << "\n";
            }
            if (!witness_out.empty())
                write_file(witness_out, witness_to_json(t).dump() + "\n");
            return kOk;
        };
    });

    // solve
    std::string td_file;
    std::string bound_text;
    bool no_kernel = false;
    bool use_propagate = false;
    std::uint64_t node_limit = 0;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print the outcome as JSON");
    solve_cmd->add_option("file", file)->required();
    solve_cmd->add_option("--td", td_file, "Treedepth witness to kernelize with");
    solve_cmd->add_option("--bound", bound_text, "Search radius overriding the certified bound");
    solve_cmd->add_flag("--no-kernel", no_kernel, "Skip kernelization");
    solve_cmd->add_flag("--propagate", use_propagate, "Derive periodicity bounds before searching");
    solve_cmd->add_option("--node-limit", node_limit, "Abort after this many search nodes");
    solve_cmd->callback([&] {
        action = [&] {
            IlpInstance inst = read_instance(file);
            SolveOptions opts;
            opts.kernel = !no_kernel;
            opts.search.propagate = use_propagate;
            opts.search.node_limit = node_limit;
            if (!bound_text.empty()) {
                auto b = parse_integer(bound_text);
                if (!b || *b < 0)
                    throw InputError("--bound expects a non-negative integer");
                opts.bound = *b;
            }
            std::optional<TreedepthDecomposition> t;
            if (!td_file.empty())
                t = read_treedepth(td_file);
            SolveOutcome r = solve(inst, t, opts);
            out << outcome_to_json(inst.variables(), r).dump(2) << "\n";
            switch (r.status) {
            case SolveStatus::Infeasible:
                return kNegative;
            case SolveStatus::BoundExhausted:
                return kResourceCap;
            default:
                return kOk;
            }
        };
    });

    // kernelize
    std::string output;
    std::string trace_file;
    auto* kern = app.add_subcommand("kernelize", "Write the kernel and its prune trace");
    kern->add_option("file", file)->required();
    kern->add_option("-o,--output", output, "Kernel instance file")->required();
    kern->add_option("--trace", trace_file, "Trace JSON file")->required();
    kern->add_option("--td", td_file, "Treedepth witness");
    kern->callback([&] {
        action = [&] {
            IlpInstance inst = read_instance(file);
            TreedepthDecomposition t =
                td_file.empty() ? decompose(build_primal_graph(inst)) : read_treedepth(td_file);
            KernelResult k = kernelize(inst, t);
            write_file(output, serialize_instance(k.instance));
            write_file(trace_file, trace_to_json(k.trace).dump(2) + "\n");
            out << "variables: " << inst.num_variables() << " -> " << k.instance.num_variables() << "\n";
            out << "steps: " << k.trace.steps.size() << "\n";
            return kOk;
        };
    });

    // lift
    std::string solution_file;
    auto* lift = app.add_subcommand("lift", "Lift a kernel solution back to the original variables");
    lift->add_option("--trace", trace_file, "Trace JSON file")->required();
    lift->add_option("--solution", solution_file, "Kernel solution JSON")->required();
    lift->callback([&] {
        action = [&] {
            KernelTrace trace = trace_from_json(read_json(trace_file));
            Assignment kernel = assignment_from_json(trace.variables, read_json(solution_file));
            Assignment full = lift_solution(trace, kernel);
            out << assignment_to_json(trace.variables, full).dump(2) << "\n";
            return kOk;
        };
    });

    // generate
    std::string graph_file;
    std::string witness_file;
    int nu = 0;
    std::string values_text;
    std::string target_text;
    auto* gen = app.add_subcommand("generate", "Emit a reduction instance");
    gen->require_subcommand(1);
    auto emit = [&](const IlpInstance& inst) {
        if (output.empty())
            out << serialize_instance(inst);
        else
            write_file(output, serialize_instance(inst));
    };
    auto* gen3 = gen->add_subcommand("3col", "3-Coloring via prime encoding");
    gen3->add_option("--graph", graph_file)->required();
    gen3->add_option("-o,--output", output);
    gen3->add_option("--witness", witness_file, "Treedepth witness output");
    gen3->callback([&] {
        action = [&] {
            auto r = reduce_three_coloring(parse_graph(read_file(graph_file)));
            emit(r.instance);
            if (!witness_file.empty())
                write_file(witness_file, witness_to_json(r.decomposition).dump() + "\n");
            return kOk;
        };
    });
    auto* genvc = gen->add_subcommand("vc", "Vertex Cover with unit coefficients");
    genvc->add_option("--graph", graph_file)->required();
    genvc->add_option("--k", nu, "Cover budget")->required();
    genvc->add_option("-o,--output", output);
    genvc->callback([&] {
        action = [&] {
            emit(reduce_vertex_cover(parse_graph(read_file(graph_file)), nu));
            return kOk;
        };
    });
    auto* genss = gen->add_subcommand("subsetsum", "Subset Sum via binary gadgets");
    genss->add_option("--values", values_text, "Comma separated positive integers")->required();
    genss->add_option("--target", target_text)->required();
    genss->add_option("-o,--output", output);
    genss->add_option("--witness", witness_file, "Tree decomposition witness output");
    genss->callback([&] {
        action = [&] {
            auto target = parse_integer(target_text);
            if (!target)
                throw InputError("--target expects an integer");
            auto r = reduce_subset_sum({parse_values(values_text), *target});
            emit(r.instance);
            if (!witness_file.empty())
                write_file(witness_file, witness_to_json(r.witness).dump() + "\n");
            return kOk;
        };
    });

    // verify
    int max_height = -1;
    int max_width = -1;
    auto* verify = app.add_subcommand("verify", "Check a decomposition witness against an instance");
    verify->add_option("file", file)->required();
    verify->add_option("--witness", witness_file)->required();
    verify->add_option("--max-height", max_height, "Also require height <= H");
    verify->add_option("--max-width", max_width, "Also require width <= W");
    verify->callback([&] {
        action = [&] {
            Graph g = build_primal_graph(read_instance(file));
            auto w = witness_from_json(read_json(witness_file));
            if (auto* t = std::get_if<TreedepthDecomposition>(&w)) {
                bool ok = verify_treedepth_decomposition(g, *t);
                if (!ok) {
                    out << "invalid treedepth decomposition\n";
                    return kNegative;
                }
                int h = height_of(*t);
                out << "valid treedepth decomposition, height " << h << "\n";
                if (max_height >= 0) {
                    bool within = h <= max_height;
                    out << "height " << (within ? "<= " : "> ") << max_height << "\n";
                    return within ? kOk : kNegative;
                }
                return kOk;
            }
            const auto& td = std::get<TreeDecompositionWitness>(w);
            if (!verify_tree_decomposition(g, td)) {
                out << "invalid tree decomposition\n";
                return kNegative;
            }
            out << "valid tree decomposition, width " << td.width() << "\n";
            if (max_width >= 0) {
                bool within = td.width() <= max_width;
                out << "width " << (within ? "<= " : "> ") << max_width << "\n";
                return within ? kOk : kNegative;
            }
            return kOk;
        };
    });

    // oracle
    std::int64_t box = 10;
    auto* orc = app.add_subcommand("oracle", "Brute-force reference answers");
    orc->require_subcommand(1);
    auto verdict = [&](bool v) {
        out << (v ? "true" : "false") << "\n";
        return v ? kOk : kNegative;
    };
    auto* oilp = orc->add_subcommand("ilp", "Enumerate [-box, box]^n");
    oilp->add_option("file", file)->required();
    oilp->add_option("--box", box)->check(CLI::NonNegativeNumber);
    oilp->callback([&] {
        action = [&] {
            IlpInstance inst = read_instance(file);
            auto r = oracle::brute_force_ilp_parallel(inst, box);
            Json j;
            j["feasible"] = r.feasible;
            if (r.feasible) {
                j["value"] = integer_to_json(r.value);
                j["assignment"] = assignment_to_json(inst.variables(), r.assignment);
            }
            out << j.dump(2) << "\n";
            return r.feasible ? kOk : kNegative;
        };
    });
    auto* oss = orc->add_subcommand("subsetsum", "Reachability table");
    oss->add_option("--values", values_text)->required();
    oss->add_option("--target", target_text)->required();
    oss->callback([&] {
        action = [&] {
            auto target = parse_integer(target_text);
            if (!target || !to_int64(*target))
                throw InputError("--target expects an integer");
            return verdict(oracle::subset_sum_dp(to_small(parse_values(values_text)), *to_int64(*target)));
        };
    });
    auto* o3 = orc->add_subcommand("3col", "Enumerate all 3-colorings");
    o3->add_option("--graph", graph_file)->required();
    o3->callback([&] {
        action = [&] { return verdict(oracle::brute_three_coloring(parse_graph(read_file(graph_file)))); };
    });
    auto* ovc = orc->add_subcommand("vc", "Enumerate vertex subsets");
    ovc->add_option("--graph", graph_file)->required();
    ovc->add_option("--k", nu)->required();
    ovc->callback([&] {
        action = [&] { return verdict(oracle::brute_vertex_cover(parse_graph(read_file(graph_file)), nu)); };
    });
    auto* otd = orc->add_subcommand("td", "Unmemoized treedepth recursion");
    otd->add_option("--graph", graph_file)->required();
    otd->callback([&] {
        action = [&] {
            out << oracle::treedepth_reference(parse_graph(read_file(graph_file))) << "\n";
            return kOk;
        };
    });

    // bounds
    std::string ell_text = "1";
    int k = 1;
    auto* bounds = app.add_subcommand("bounds", "Print the kernel size recurrences");
    bounds->add_option("--ell", ell_text)->required();
    bounds->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    bounds->callback([&] {
        action = [&] {
            auto ell = parse_integer(ell_text);
            if (!ell || *ell < 0)
                throw InputError("--ell expects a non-negative integer");
            KernelBounds b = compute_bounds(*ell, k);
            out << "ell = " << to_string(*ell) << ", k = " << k << "\n";
            out << "i\td_i\te_i\n";
            for (int i = k; i >= 1; --i)
                out << i << "\t" << describe(b.d[i]) << "\t" << describe(b.e[i]) << "\n";
            out << "e_1 = " << describe(b.e1()) << "\n";
            return kOk;
        };
    });

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (threads > 0)
        omp_set_num_threads(threads);
    if (!action)
        return kUsage;
    try {
        return action();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const TraceMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SearchLimitExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kResourceCap;
    } catch (const oracle::BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kResourceCap;
    } catch (const VertexCapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kResourceCap;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace tdilp::cli
