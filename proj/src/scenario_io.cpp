#include "recopt/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recopt/error.hpp"

namespace recopt {
namespace {

using nlohmann::json;

constexpr std::string_view kFormatName = "recopt-scenario";
constexpr int kFormatVersion = 1;

[[noreturn]] void field_error(std::string_view source, const std::string& field,
                              const std::string& what) {
    throw Error(ErrorCode::ParseError, std::string(source) + ": " + field + ": " + what);
}

const json& require(const json& obj, const char* key, std::string_view source,
                    const std::string& path) {
    if (!obj.is_object()) field_error(source, path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) field_error(source, path + "." + key, "missing field");
    return *it;
}

double number(const json& value, std::string_view source, const std::string& path) {
    if (!value.is_number()) field_error(source, path, "expected a number");
    return value.get<double>();
}

EnergySeries series(const json& value, std::string_view source, const std::string& path,
                    int slot_minutes) {
    if (!value.is_array()) field_error(source, path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        out.push_back(number(value[i], source, path + "[" + std::to_string(i) + "]"));
    return EnergySeries(std::move(out), slot_minutes);
}

std::string format_number(double v) { return json(v).dump(); }

void write_series(std::ostringstream& out, const EnergySeries& s) {
    out << '[';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out << ", ";
        out << format_number(s[i]);
    }
    out << ']';
}

}  // namespace

ValidatedScenario parse_scenario(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line/column.
        std::size_t line = 1, column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw Error(ErrorCode::ParseError, std::string(source) + ":" + std::to_string(line) + ":" +
                                               std::to_string(column) + ": " + e.what());
    }

    if (!doc.is_object()) field_error(source, "$", "expected a JSON object");
    if (auto it = doc.find("format"); it != doc.end() && *it != kFormatName)
        field_error(source, "format", "expected \"" + std::string(kFormatName) + "\"");
    if (auto it = doc.find("version"); it != doc.end() && *it != kFormatVersion)
        field_error(source, "version", "unsupported version");

    int slot_minutes = kDefaultSlotMinutes;
    if (auto it = doc.find("slot_minutes"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() <= 0)
            field_error(source, "slot_minutes", "expected a positive integer");
        slot_minutes = it->get<int>();
    }
    std::optional<std::size_t> horizon;
    if (auto it = doc.find("horizon"); it != doc.end()) {
        if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
            field_error(source, "horizon", "expected a positive integer");
        horizon = it->get<std::size_t>();
    }

    const json& tariff_j = require(doc, "tariff", source, "$");
    Tariff tariff{number(require(tariff_j, "purchase_price", source, "tariff"), source,
                         "tariff.purchase_price"),
                  number(require(tariff_j, "sell_price", source, "tariff"), source,
                         "tariff.sell_price"),
                  number(require(tariff_j, "incentive", source, "tariff"), source,
                         "tariff.incentive")};
    const json& storage_j = require(doc, "storage", source, "$");
    StorageParams storage{
        number(require(storage_j, "efficiency", source, "storage"), source, "storage.efficiency")};

    const json& entities_j = require(doc, "entities", source, "$");
    if (!entities_j.is_array()) field_error(source, "entities", "expected an array");
    std::vector<EntityProfile> entities;
    for (std::size_t i = 0; i < entities_j.size(); ++i) {
        const std::string path = "entities[" + std::to_string(i) + "]";
        const json& e = entities_j[i];
        const json& id = require(e, "id", source, path);
        if (!id.is_string()) field_error(source, path + ".id", "expected a string");
        const json& kind_j = require(e, "kind", source, path);
        if (!kind_j.is_string()) field_error(source, path + ".kind", "expected a string");
        auto kind = parse_entity_kind(kind_j.get<std::string>());
        if (!kind)
            field_error(source, path + ".kind", "unknown kind '" + kind_j.get<std::string>() + "'");
        EntityProfile profile{id.get<std::string>(), *kind,
                              series(require(e, "load", source, path), source, path + ".load",
                                     slot_minutes),
                              series(require(e, "generation", source, path), source,
                                     path + ".generation", slot_minutes)};
        entities.push_back(std::move(profile));
    }
    return validate_scenario(std::move(entities), storage, tariff, horizon, slot_minutes);
}

ValidatedScenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

std::string write_scenario(const ValidatedScenario& scenario) {
    std::ostringstream out;
    const Tariff& t = scenario.tariff();
    out << "{\n";
    out << "  \"format\": \"" << kFormatName << "\",\n";
    out << "  \"version\": " << kFormatVersion << ",\n";
    out << "  \"horizon\": " << scenario.horizon() << ",\n";
    out << "  \"slot_minutes\": " << scenario.slot_minutes() << ",\n";
    out << "  \"tariff\": {\"purchase_price\": " << format_number(t.purchase_price)
        << ", \"sell_price\": " << format_number(t.sell_price)
        << ", \"incentive\": " << format_number(t.incentive) << "},\n";
    out << "  \"storage\": {\"efficiency\": " << format_number(scenario.storage().efficiency)
        << "},\n";
    out << "  \"entities\": [";
    const auto& entities = scenario.entities();
    for (std::size_t i = 0; i < entities.size(); ++i) {
        const EntityProfile& e = entities[i];
        out << (i ? ",\n" : "\n");
        out << "    {\n";
        out << "      \"id\": " << json(e.id).dump() << ",\n";
        out << "      \"kind\": \"" << to_string(e.kind) << "\",\n";
        out << "      \"load\": ";
        write_series(out, e.load);
        out << ",\n      \"generation\": ";
        write_series(out, e.generation);
        out << "\n    }";
    }
    out << (entities.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
}

void save_scenario(const std::filesystem::path& path, const ValidatedScenario& scenario) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, path.string() + ": cannot write file");
    out << write_scenario(scenario);
}

}  // namespace recopt
