// Copyright 2026 The fcqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fcqst/json_io.hpp"

#include <string>

#include "fcqst/error.hpp"

namespace fcqst {

namespace {

nlohmann::json complex_pair(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2) {
        throw Error(ErrorKind::ContractViolation, std::string(key) + " must be [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ContractViolation, std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

nlohmann::json to_json(const SpinModel& model) {
    nlohmann::json j;
    j["n"] = model.n();
    j["couplings"] = nlohmann::json::array();
    for (const auto& [pair, c] : model.couplings()) {
        j["couplings"].push_back({pair.first, pair.second, c.real(), c.imag()});
    }
    j["zz"] = nlohmann::json::array();
    for (const auto& [pair, u] : model.zz_terms()) j["zz"].push_back({pair.first, pair.second, u});
    j["fields"] = model.fields();
    return j;
}

SpinModel spin_model_from_json(const nlohmann::json& j) {
    return guarded([&] {
        SpinModel m(j.at("n").get<int>());
        for (const auto& c : j.value("couplings", nlohmann::json::array())) {
            if (c.size() != 4) throw Error(ErrorKind::ContractViolation, "coupling entries are [i, j, re, im]");
            m.set_coupling(c[0].get<int>(), c[1].get<int>(), Complex(c[2].get<double>(), c[3].get<double>()));
        }
        for (const auto& z : j.value("zz", nlohmann::json::array())) {
            if (z.size() != 3) throw Error(ErrorKind::ContractViolation, "zz entries are [i, j, u]");
            m.set_zz(z[0].get<int>(), z[1].get<int>(), z[2].get<double>());
        }
        if (j.contains("fields")) {
            const auto& f = j.at("fields");
            if (!f.is_array() || static_cast<int>(f.size()) != m.n()) {
                throw Error(ErrorKind::ContractViolation, "fields must list one value per qubit");
            }
            for (int q = 1; q <= m.n(); ++q) m.set_field(q, f[static_cast<std::size_t>(q - 1)].get<double>());
        }
        return m;
    });
}

nlohmann::json to_json(const Effective3& h) {
    return {{"j1a", complex_pair(h.j1a)}, {"jan", complex_pair(h.jan)}, {"j1n", complex_pair(h.j1n)},
            {"d1", h.d1},                 {"da", h.da},                  {"dn", h.dn}};
}

Effective3 effective3_from_json(const nlohmann::json& j) {
    return guarded([&] {
        Effective3 h;
        h.j1a = complex_from(j, "j1a");
        h.jan = complex_from(j, "jan");
        h.j1n = complex_from(j, "j1n");
        h.d1 = j.at("d1").get<double>();
        h.da = j.at("da").get<double>();
        h.dn = j.at("dn").get<double>();
        return h;
    });
}

}  // namespace fcqst
