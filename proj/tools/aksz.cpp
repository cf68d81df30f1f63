#include <algorithm>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aksz/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;

void print_input_error(const std::string& file, const aksz::Error& e) {
    std::cerr << "aksz: " << file << ": " << aksz::to_string(e.kind()) << ": " << e.what() << "\n";
}

int cmd_run(const std::string& file, bool as_json, const std::vector<std::string>& tasks, bool timing) {
    for (const auto& t : tasks) {
        const auto& known = aksz::known_tasks();
        if (std::find(known.begin(), known.end(), t) == known.end()) {
            std::cerr << "aksz: unknown task '" << t << "'\n";
            return exit_input;
        }
    }
    aksz::Scenario s;
    try {
        s = aksz::load_scenario_file(file);
    } catch (const aksz::Error& e) {
        print_input_error(file, e);
        return exit_input;
    }
    const aksz::ScenarioReport rep = aksz::run_scenario(s, tasks);
    if (as_json) {
        std::cout << aksz::report_json(rep, timing).dump(2) << "\n";
    } else {
        std::cout << aksz::report_text(rep, timing);
    }
    return rep.passed() ? exit_pass : exit_fail;
}

int cmd_check(const std::string& file) {
    try {
        const aksz::Scenario s = aksz::load_scenario_file(file);
        std::cout << file << ": ok (" << s.name << ", " << s.tasks.size() << " tasks)\n";
        return exit_pass;
    } catch (const aksz::Error& e) {
        print_input_error(file, e);
        return exit_input;
    }
}

int cmd_corpus(const std::string& dir, bool as_json, bool timing) {
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
    }
    if (ec) {
        std::cerr << "aksz: cannot read corpus directory '" << dir << "': " << ec.message() << "\n";
        return exit_input;
    }
    std::sort(files.begin(), files.end());

    std::vector<aksz::Scenario> scenarios;
    for (const auto& f : files) {
        try {
            scenarios.push_back(aksz::load_scenario_file(f));
        } catch (const aksz::Error& e) {
            print_input_error(f, e);
            return exit_input;
        }
    }
    std::vector<std::future<aksz::ScenarioReport>> pending;
    for (const auto& s : scenarios) {
        pending.push_back(std::async(std::launch::async, [&s] { return aksz::run_scenario(s); }));
    }
    std::vector<aksz::ScenarioReport> reports;
    for (auto& p : pending) reports.push_back(p.get());

    const auto passed = static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); }));
    if (as_json) {
        aksz::ordered_json out;
        out["schema_version"] = aksz::report_schema_version;
        out["passed"] = passed == reports.size();
        out["scenarios"] = aksz::ordered_json::array();
        for (const auto& r : reports) out["scenarios"].push_back(aksz::report_json(r, timing));
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : reports) std::cout << aksz::report_text(r, timing);
        std::cout << "corpus: " << passed << "/" << reports.size() << " scenarios passed\n";
    }
    return passed == reports.size() ? exit_pass : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact AKSZ workbench: runs scenario files and reports the verified identities"};
    app.require_subcommand(1);

    std::string run_file;
    bool run_json = false;
    bool run_timing = false;
    std::vector<std::string> run_tasks;
    auto* run = app.add_subcommand("run", "Run the tasks of a scenario file");
    run->add_option("file", run_file, "Scenario file")->required();
    run->add_flag("--json", run_json, "Emit the JSON report");
    run->add_option("--task", run_tasks, "Run only the named task (repeatable)");
    run->add_flag("--timing", run_timing, "Include wall time per task");

    std::string check_file;
    auto* check = app.add_subcommand("check", "Validate a scenario file without running it");
    check->add_option("file", check_file, "Scenario file")->required();

    std::string corpus_dir = AKSZ_CORPUS_DIR;
    bool corpus_json = false;
    bool corpus_timing = false;
    auto* corpus = app.add_subcommand("corpus", "Run every scenario of the bundled corpus");
    corpus->add_option("--dir", corpus_dir, "Corpus directory");
    corpus->add_flag("--json", corpus_json, "Emit one JSON document for the corpus");
    corpus->add_flag("--timing", corpus_timing, "Include wall time per task");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_input;
    }

    if (*run) return cmd_run(run_file, run_json, run_tasks, run_timing);
    if (*check) return cmd_check(check_file);
    return cmd_corpus(corpus_dir, corpus_json, corpus_timing);
}
