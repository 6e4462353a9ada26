#include "silkswap/snapshot.hpp"

#include <array>
#include <sstream>

namespace silkswap {

namespace {

unsigned to_gamma(const SignedDecimal& v, const char* key) {
    if (v.negative() || v.magnitude() % SignedDecimal::scale() != 0) {
        throw std::invalid_argument(std::string("PoolSnapshot: ") + key +
                                    " must be a non-negative integer");
    }
    const uint256 whole = v.magnitude() / SignedDecimal::scale();
    if (whole > 1000000u) {
        throw std::invalid_argument(std::string("PoolSnapshot: ") + key + " out of range");
    }
    return whole.convert_to<unsigned>();
}

}  // namespace

PoolSnapshot PoolSnapshot::from_text(std::string_view text) {
    PoolSnapshot snap;
    std::array<bool, 9> seen{};
    const std::array<const char*, 9> keys = {"x",  "y",      "d",      "p_x",     "p_y",
                                             "a",  "gamma1", "gamma2", "fee_rate"};

    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("PoolSnapshot: line without '=': " + line);
        }
        const std::string key = line.substr(0, eq);
        const SignedDecimal value = SignedDecimal::parse(line.substr(eq + 1));

        std::size_t idx = keys.size();
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (key == keys[i]) {
                idx = i;
                break;
            }
        }
        if (idx == keys.size()) throw std::invalid_argument("PoolSnapshot: unknown key: " + key);
        if (seen[idx]) throw std::invalid_argument("PoolSnapshot: duplicate key: " + key);
        seen[idx] = true;

        switch (idx) {
            case 0: snap.x = value; break;
            case 1: snap.y = value; break;
            case 2: snap.d = value; break;
            case 3: snap.p_x = value; break;
            case 4: snap.p_y = value; break;
            case 5: snap.a = value; break;
            case 6: snap.gamma1 = to_gamma(value, "gamma1"); break;
            case 7: snap.gamma2 = to_gamma(value, "gamma2"); break;
            case 8: snap.fee_rate = value; break;
        }
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (!seen[i]) {
            throw std::invalid_argument(std::string("PoolSnapshot: missing key: ") + keys[i]);
        }
    }
    return snap;
}

std::string PoolSnapshot::to_text() const {
    std::string out;
    out += "x=" + x.to_string() + "\n";
    out += "y=" + y.to_string() + "\n";
    out += "d=" + d.to_string() + "\n";
    out += "p_x=" + p_x.to_string() + "\n";
    out += "p_y=" + p_y.to_string() + "\n";
    out += "a=" + a.to_string() + "\n";
    out += "gamma1=" + SignedDecimal::from_int(gamma1).to_string() + "\n";
    out += "gamma2=" + SignedDecimal::from_int(gamma2).to_string() + "\n";
    out += "fee_rate=" + fee_rate.to_string() + "\n";
    return out;
}

}  // namespace silkswap
