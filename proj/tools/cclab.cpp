#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "cclab/report.hpp"
#include "cclab/spectral/experiments.hpp"

namespace fs = std::filesystem;
using namespace cclab;

namespace {

struct Options {
    std::vector<std::string> inputs;
    int grid = 0;
    int trials = 20;
    unsigned seed = 42;
    double tol = 1e-8;
    int scale_lo = -4;
    int scale_hi = 1;
    std::string out;
    std::string format = "json";
    std::string dump;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            for (const auto& e : fs::directory_iterator(in))
                if (e.path().extension() == ".op") files.push_back(e.path().string());
        } else {
            files.push_back(in);
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

// parse all operator files; diagnostics go to stderr, parse failure exits 2
std::vector<OperatorSpec> load_specs(const std::vector<std::string>& inputs) {
    std::vector<OperatorSpec> specs;
    for (const auto& path : expand_inputs(inputs)) {
        try {
            auto parsed = parse_operators(read_file(path));
            specs.insert(specs.end(), parsed.begin(), parsed.end());
        } catch (const ParseError& e) {
            std::cerr << path << ":" << e.what() << "\n";
            std::exit(2);
        }
    }
    std::sort(specs.begin(), specs.end(),
              [](const OperatorSpec& a, const OperatorSpec& b) { return a.name < b.name; });
    return specs;
}

void write_out(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream of(opt.out);
        of << text << "\n";
    }
}

int run_analyze(const Options& opt, bool with_numeric) {
    auto specs = load_specs(opt.inputs);
    std::vector<AnalysisReport> reports;
    bool inconsistent = false;
    for (const auto& spec : specs) {
        AnalysisReport rep = analyze(spec);
        if (with_numeric) {
            int n = opt.grid > 0 ? opt.grid : spectral::default_grid(spec.dim);
            spectral::NumericCrossCheck nc = spectral::numeric_cross_check(
                spec, rep.zero_integral, n, opt.trials, opt.seed, opt.tol);
            rep.numeric = NumericCheck{nc.trials, nc.max_rel_integral, nc.witness_rel_integral,
                                       nc.agrees};
            if (!nc.agrees) {
                rep.internal_inconsistency = true;
                rep.flags.push_back("internal_inconsistency: numeric oracle disagrees with the symbolic verdict");
            }
            if (!opt.dump.empty()) {
                fs::create_directories(opt.dump);
                auto fields = spectral::sample_spec_fields(
                    spec, n, opt.seed, spectral::default_field_style(spec.dim));
                for (const auto& [key, src] : fields)
                    src.grid.save_raw(opt.dump + "/" + spec.name + "_" + key.first + "_" +
                                      std::to_string(key.second));
            }
        }
        inconsistent = inconsistent || rep.internal_inconsistency;
        reports.push_back(std::move(rep));
    }
    if (opt.format == "csv") {
        std::ostringstream os;
        os << "name,n,shape,homogeneous,degree,zero_integral,method,null_lagrangian,"
              "h1_regular,theorem,max_rel_integral,flags\n";
        for (const auto& r : reports) {
            os << r.name << "," << r.dim << "," << "\"" << r.shape << "\"" << ","
               << r.homogeneous.is_homogeneous << "," << r.homogeneous.degree << ","
               << r.zero_integral.value << "," << verdict_method_str(r.zero_integral.method)
               << "," << (r.null_lagrangian ? (r.null_lagrangian->value ? "1" : "0") : "") << ","
               << (r.h1.value ? (*r.h1.value ? "1" : "0") : "") << "," << r.h1.theorem << ","
               << (r.numeric ? std::to_string(r.numeric->max_rel_integral) : "") << ","
               << r.flags.size() << "\n";
        }
        write_out(opt, os.str());
    } else {
        write_out(opt, reports_to_json(reports));
    }
    return inconsistent ? 1 : 0;
}

int run_decompose(const Options& opt) {
    auto specs = load_specs(opt.inputs);
    std::ostringstream os;
    os << "[";
    bool first_spec = true;
    for (const auto& spec : specs) {
        if (!first_spec) os << ",";
        first_spec = false;
        os << "\n  {\"name\": \"" << spec.name << "\", \"levels\": [";
        bool first = true;
        for (const auto& [level, sub] : scaling_decompose(spec)) {
            if (!first) os << ",";
            first = false;
            Verdict v = zero_integral(sub);
            os << "\n    {\"level\": " << level << ", \"zero_integral\": "
               << (v.value ? "true" : "false") << ", \"body\": \"" << sub.body.str() << "\"}";
        }
        os << "\n  ]}";
    }
    os << "\n]";
    write_out(opt, os.str());
    return 0;
}

int run_experiment(const Options& opt, const std::string& name) {
    spectral::ExperimentConfig cfg;
    cfg.grid = opt.grid;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.tol = opt.tol;
    cfg.scale_lo = opt.scale_lo;
    cfg.scale_hi = opt.scale_hi;
    auto results = spectral::run_experiment(name, cfg);
    std::string dir = opt.out.empty() ? "." : opt.out;
    fs::create_directories(dir);
    bool all_pass = true;
    for (const auto& r : results) {
        std::ofstream csv(dir + "/" + r.id + ".csv");
        csv << r.to_csv();
        std::ofstream js(dir + "/" + r.id + ".summary.json");
        js << r.summary_json() << "\n";
        std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.id;
        if (!r.note.empty()) std::cout << "  (" << r.note << ")";
        std::cout << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for constant-coefficient multilinear PDE quantities"};
    app.require_subcommand(1);

    Options opt;
    std::string experiment_name;

    auto add_common = [&](CLI::App* cmd, bool needs_inputs) {
        if (needs_inputs)
            cmd->add_option("inputs", opt.inputs, "operator files or directories")->required();
        cmd->add_option("--grid", opt.grid, "grid resolution per axis (0 = default)");
        cmd->add_option("--trials", opt.trials, "number of seeded trials");
        cmd->add_option("--seed", opt.seed, "base random seed");
        cmd->add_option("--tol", opt.tol, "relative tolerance for zero verdicts");
        cmd->add_option("--scales", [&](const std::vector<std::string>& vals) {
            if (vals.size() != 1) return false;
            return sscanf(vals[0].c_str(), "%d,%d", &opt.scale_lo, &opt.scale_hi) == 2;
        }, "dyadic scale range j-,j+");
        cmd->add_option("--out", opt.out, "output file (reports) or directory (experiments)");
        cmd->add_option("--format", opt.format, "json|csv");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "symbolic classification reports");
    add_common(analyze, true);
    CLI::App* decompose = app.add_subcommand("decompose", "derivative-order decomposition");
    add_common(decompose, true);
    CLI::App* numeric = app.add_subcommand("numeric", "quadrature cross-check of the verdicts");
    add_common(numeric, true);
    numeric->add_option("--dump", opt.dump, "directory for raw field snapshots");
    CLI::App* corpus = app.add_subcommand("corpus", "analyze + numeric over a corpus directory");
    add_common(corpus, true);
    CLI::App* experiment = app.add_subcommand("experiment", "named numerical experiments");
    experiment->add_option("name", experiment_name,
                           "scaling|scaling-lp|oscillation|beurling|kb|potentials|poincare|ns")
        ->required();
    add_common(experiment, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(opt, false);
        if (app.got_subcommand(decompose)) return run_decompose(opt);
        if (app.got_subcommand(numeric)) return run_analyze(opt, true);
        if (app.got_subcommand(corpus)) return run_analyze(opt, true);
        if (app.got_subcommand(experiment)) return run_experiment(opt, experiment_name);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
