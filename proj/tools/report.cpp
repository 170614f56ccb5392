#include "report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "kinlap/field.hpp"

#ifndef KINLAP_VERSION
#define KINLAP_VERSION "0.0.0"
#endif

namespace kinlap::cli {

namespace {

std::string cell(double x) {
    return std::isnan(x) ? std::string() : format_double(x);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file: " + path);
    return f;
}

}  // namespace

bool Report::all_pass() const {
    for (const auto& r : rows_)
        if (r.pass == Verdict::Fail) return false;
    return true;
}

void Report::write_csv(std::ostream& out) const {
    out << kColumns << '\n';
    for (const auto& r : rows_) {
        out << r.quantity << ',' << cell(r.value) << ',' << cell(r.predicted) << ',' << cell(r.measured) << ','
            << (r.pass == Verdict::None ? "" : r.pass == Verdict::Pass ? "true" : "false") << ',' << cell(r.tolerance)
            << '\n';
    }
}

json meta_document(const Config& cfg, const json& extra) {
    json doc{{"artifact", "kinlap"},
             {"version", KINLAP_VERSION},
             {"command", cfg.command()},
             {"config", cfg.values()},
             {"config_hash", cfg.hash()}};
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    return doc;
}

void emit_csv(const Config& cfg, const Report& report, const std::string& out) {
    if (out.empty()) {
        report.write_csv(std::cout);
        return;
    }
    {
        auto f = open_out(out);
        report.write_csv(f);
    }
    auto m = open_out(out + ".meta.json");
    m << meta_document(cfg, {{"columns", kColumns}, {"all_pass", report.all_pass()}}).dump(2) << '\n';
}

void emit_json(const Config& cfg, const json& body, const std::string& out) {
    json doc = body;
    doc["meta"] = meta_document(cfg);
    if (out.empty()) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    auto f = open_out(out);
    f << doc.dump(2) << '\n';
}

}  // namespace kinlap::cli
