#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "config.hpp"

namespace kinlap::cli {

inline constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

enum class Verdict { None, Pass, Fail };

inline Verdict verdict(bool ok) {
    return ok ? Verdict::Pass : Verdict::Fail;
}

/// One CSV line: quantity,value,predicted,measured,pass,tolerance. NaN cells are left empty.
struct Row {
    std::string quantity;
    double value = kNone;
    double predicted = kNone;
    double measured = kNone;
    Verdict pass = Verdict::None;
    double tolerance = kNone;
};

class Report {
public:
    void add(Row row) { rows_.push_back(std::move(row)); }
    void add(std::string quantity, double value, double predicted, double measured, Verdict pass = Verdict::None,
             double tolerance = kNone) {
        rows_.push_back({std::move(quantity), value, predicted, measured, pass, tolerance});
    }
    const std::vector<Row>& rows() const { return rows_; }
    bool all_pass() const;
    void write_csv(std::ostream& out) const;

private:
    std::vector<Row> rows_;
};

inline const char* kColumns = "quantity,value,predicted,measured,pass,tolerance";

/// Sidecar document: artifact, version, command, config, config_hash plus `extra`.
json meta_document(const Config& cfg, const json& extra = json::object());

/// CSV to `out` (stdout when empty) and `<out>.meta.json` next to it.
void emit_csv(const Config& cfg, const Report& report, const std::string& out);

/// JSON body with the meta fields merged in, to `out` or stdout.
void emit_json(const Config& cfg, const json& body, const std::string& out);

}  // namespace kinlap::cli
