#include "affsurf/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace affsurf {

bool ExperimentReport::all_passed() const {
    for (const auto& r : rows)
        if (r.pass.has_value() && !*r.pass) return false;
    return true;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os << "# affsurf " << version << " command=" << command << " seed=" << seed << "\n";
    os << "# timestamp: " << timestamp << "\n";
    os << "id,inputs,estimate,error,reference,ratio,tolerance,provenance,pass\n";
    for (const auto& r : rows) {
        os << r.id << ",\"" << r.inputs << "\"," << fmt(r.estimate) << "," << fmt(r.error) << ",";
        os << (r.reference ? fmt(*r.reference) : "") << ",";
        os << (r.ratio ? fmt(*r.ratio) : "") << ",";
        os << (r.tolerance ? fmt(*r.tolerance) : "") << ",";
        os << r.provenance << ",";
        os << (r.pass ? (*r.pass ? "pass" : "FAIL") : "") << "\n";
    }
    return os.str();
}

std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = version;
    j["command"] = command;
    j["seed"] = seed;
    j["timestamp"] = timestamp;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["id"] = r.id;
        row["inputs"] = r.inputs;
        row["estimate"] = r.estimate;
        row["error"] = r.error;
        if (r.reference) row["reference"] = *r.reference;
        if (r.ratio) row["ratio"] = *r.ratio;
        if (r.tolerance) row["tolerance"] = *r.tolerance;
        row["provenance"] = r.provenance;
        if (r.pass) row["pass"] = *r.pass;
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

void ExperimentReport::write(const std::string& path, const std::string& format) const {
    std::string body = (format == "json") ? to_json() : to_csv();
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("report: cannot open " + tmp);
        os << body;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("report: atomic rename failed for " + path);
}

}  // namespace affsurf
