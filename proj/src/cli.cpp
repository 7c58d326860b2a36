#include "lc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "lc/errors.hpp"
#include "lc/measure.hpp"
#include "lc/parse.hpp"

namespace lc::cli {

namespace {

std::string load_expression(const std::string& positional,
                            const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw Error("cannot read " + file);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    if (positional.empty()) throw Error("missing expression (pass it as an "
                                        "argument or via -f <file>)");
    return positional;
}

void print_trace(std::ostream& out, const std::vector<std::string>& trace) {
    out << "trace:\n";
    for (const auto& line : trace) out << "  " << line << "\n";
}

int render_measure(std::ostream& out, const MeasureResult& r, const Rational& K,
                   bool trace, const std::string& label) {
    if (trace) print_trace(out, r.trace);
    switch (r.kind) {
        case MeasureKind::Value:
            out << label << " = " << r.value->str() << " (order " << to_string(K)
                << ")\n";
            return 0;
        case MeasureKind::NotOuterMeasurable:
            out << "NOT OUTER MEASURABLE: " << r.witness << "\n";
            return 2;
        case MeasureKind::Undecided:
            out << "UNDECIDED: " << r.witness << "\n";
            return 3;
    }
    return 1;
}

CoverSequence require_covers(const SetPtr& set, const std::string& name) {
    if (name != "standard")
        throw Error("unknown cover pattern '" + name +
                    "' (available: standard)");
    auto covers = make_standard_covers(set);
    if (!covers)
        throw Error("no standard cover construction applies to this set; "
                    "squeezing covers exist only for interval sets, certified "
                    "countable unions, enumerated point sets, and separated "
                    "unions of those");
    return *covers;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"exact arithmetic and measures on the Levi-Civita field"};
    app.name("lcr");
    app.require_subcommand(1);

    std::string expr_arg, file_arg, covers_name = "standard";
    std::string order_text = "16", at_text = "0";
    long derive_n = 1;
    bool trace = false;

    auto add_common = [&](CLI::App* cmd, bool with_covers) {
        cmd->add_option("expr", expr_arg, "expression");
        cmd->add_option("-f,--file", file_arg, "read the expression from a file");
        cmd->add_option("--order", order_text, "truncation order (rational)");
        cmd->add_flag("--trace", trace, "print the evaluation trace");
        if (with_covers)
            cmd->add_option("--covers", covers_name, "cover pattern")
                ->required();
    };

    CLI::App* eval_cmd = app.add_subcommand("eval", "parse and print a series");
    eval_cmd->add_option("expr", expr_arg, "series literal");
    eval_cmd->add_option("-f,--file", file_arg, "read the series from a file");

    CLI::App* measure_cmd =
        app.add_subcommand("measure", "outer measure of a set expression");
    add_common(measure_cmd, false);

    CLI::App* smeasure_cmd =
        app.add_subcommand("smeasure", "squeeze measure from inner/outer covers");
    add_common(smeasure_cmd, true);

    CLI::App* decompose_cmd = app.add_subcommand(
        "decompose", "split into disjoint intervals plus a null part");
    add_common(decompose_cmd, true);

    CLI::App* lcheck_cmd =
        app.add_subcommand("lcheck", "measurability against the splitting identity");
    add_common(lcheck_cmd, false);

    CLI::App* derive_cmd =
        app.add_subcommand("derive", "derivative via infinitesimal expansion");
    derive_cmd->add_option("expr", expr_arg, "function of x");
    derive_cmd->add_option("-f,--file", file_arg, "read the function from a file");
    derive_cmd->add_option("--at", at_text, "expansion point (rational)")
        ->required();
    derive_cmd->add_option("--n", derive_n, "derivative order")->required();

    std::vector<const char*> argv;
    argv.push_back("lcr");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (eval_cmd->parsed()) {
            LCNumber x = parse_number(load_expression(expr_arg, file_arg));
            out << x.str() << "\n";
            return 0;
        }
        Rational K = parse_rational_text(order_text);
        if (K <= 0) throw Error("--order must be positive");

        if (measure_cmd->parsed()) {
            SetPtr set = parse_set_script(load_expression(expr_arg, file_arg));
            MeasureResult r = outer_measure(set, K);
            return render_measure(out, r, K, trace, "measure");
        }
        if (smeasure_cmd->parsed()) {
            SetPtr set = parse_set_script(load_expression(expr_arg, file_arg));
            CoverSequence covers = require_covers(set, covers_name);
            MeasureResult r = s_measure(set, covers, K);
            return render_measure(out, r, K, trace, "smeasure");
        }
        if (decompose_cmd->parsed()) {
            SetPtr set = parse_set_script(load_expression(expr_arg, file_arg));
            CoverSequence covers = require_covers(set, covers_name);
            Decomposition d = decompose(set, covers, K);
            if (trace) print_trace(out, d.trace);
            out << "intervals (" << d.intervals.size() << "):";
            if (d.intervals.empty()) out << " none";
            for (std::size_t i = 0; i < d.intervals.size(); ++i)
                out << (i ? ", " : " ") << d.intervals[i].str();
            out << "\n";
            out << "interval sum = " << d.interval_sum.str() << "\n";
            out << "squeeze value = " << d.squeeze_value.str() << " (order "
                << to_string(K) << ")\n";
            out << "null part: " << describe(d.null_part) << "\n";
            out << "residual covers: certified < d^k at every stage k = 1.."
                << d.residuals.size() << "\n";
            return 0;
        }
        if (lcheck_cmd->parsed()) {
            SetPtr set = parse_set_script(load_expression(expr_arg, file_arg));
            LCheckResult r = is_L_measurable(set, K);
            if (trace) print_trace(out, r.trace);
            switch (r.verdict) {
                case LVerdict::Yes:
                    out << "L-measurable: yes, measure = " << r.measure->str()
                        << " (order " << to_string(K) << ")\n";
                    return 0;
                case LVerdict::No:
                    out << "L-measurable: no (witness: " << r.witness << ")\n";
                    return 2;
                case LVerdict::Unknown:
                    out << "L-measurable: unknown (" << r.witness << ")\n";
                    return 3;
            }
        }
        if (derive_cmd->parsed()) {
            FuncPtr f = parse_func(load_expression(expr_arg, file_arg));
            Rational x0 = parse_rational_text(at_text);
            Rational value = derivative_demo(f, x0, derive_n);
            out << to_string(value) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no command\n";
    return 1;
}

} // namespace lc::cli
