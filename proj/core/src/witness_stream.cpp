#include "rbc/witness/stream.hpp"

#include <json.hpp>

#include "rbc/common.hpp"

namespace rbc::wit {

std::string family_name(Family family) {
    switch (family) {
        case Family::T1: return "t1";
        case Family::T2: return "t2";
        case Family::T4: return "t4";
        case Family::T5: return "t5";
        case Family::T6: return "t6";
        case Family::Enum: return "enum";
        case Family::T7: return "t7";
    }
    return "?";
}

Family family_from_name(std::string_view name) {
    if (name == "t1") return Family::T1;
    if (name == "t2") return Family::T2;
    if (name == "t4") return Family::T4;
    if (name == "t5") return Family::T5;
    if (name == "t6") return Family::T6;
    if (name == "enum") return Family::Enum;
    if (name == "t7") return Family::T7;
    throw ParamOutOfRange("unknown witness family: " + std::string(name));
}

std::string WitnessParams::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["v"] = v;
    j["vprime"] = v_prime;
    j["c"] = c_exp;
    j["nstart"] = n_start;
    j["nend"] = n_end;
    j["zonestart"] = zone_start;
    j["machinesafe"] = machine_safe;
    return j.dump();
}

WitnessParams WitnessParams::from_json(const std::string& json, const Alphabet& alphabet) {
    WitnessParams p;
    p.alphabet = alphabet;
    nlohmann::json j = nlohmann::json::parse(json);
    p.k = j.value("k", 0);
    p.v = j.value("v", 0);
    p.v_prime = j.value("vprime", 0);
    p.c_exp = j.value("c", 7);
    p.n_start = j.value("nstart", 4);
    p.n_end = j.value("nend", 14);
    p.zone_start = j.value("zonestart", 0);
    p.machine_safe = j.value("machinesafe", false);
    return p;
}

WitnessStream::WitnessStream(Family family, WitnessParams params, std::uint64_t seed)
    : family_(family), params_(std::move(params)), seed_(seed),
      generator_(make_generator(family_, params_, seed_)) {}

void WitnessStream::ensure(std::int64_t len) {
    while (!exhausted_ && generated() < len) {
        if (!generator_->emit_more(buffer_, checkpoints_)) {
            exhausted_ = true;
        }
    }
}

char WitnessStream::at(std::int64_t pos) {
    ensure(pos + 1);
    if (pos >= generated()) {
        throw ParamOutOfRange("position beyond the family's generated range");
    }
    return buffer_[static_cast<std::size_t>(pos)];
}

std::string_view WitnessStream::prefix(std::int64_t len) {
    ensure(len);
    if (generated() < len) {
        throw ParamOutOfRange("prefix longer than the family's generated range");
    }
    return std::string_view(buffer_).substr(0, static_cast<std::size_t>(len));
}

WitnessStream generate(Family family, const WitnessParams& params, std::uint64_t seed,
                       std::int64_t prefix_len) {
    WitnessStream stream(family, params, seed);
    stream.ensure(prefix_len);
    if (stream.generated() < prefix_len) {
        throw ParamOutOfRange("requested prefix exceeds the family's generated range");
    }
    return stream;
}

} // namespace rbc::wit
