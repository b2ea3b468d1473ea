#include "ppt/types.hpp"

namespace ppt {

PoissonModel::PoissonModel(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) {
        throw std::invalid_argument("PoissonModel: need at least one rate");
    }
    for (double l : lambdas_) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw std::invalid_argument("PoissonModel: rates must be finite and > 0");
        }
    }
}

PoissonModel PoissonModel::tail() const {
    if (lambdas_.size() < 2) {
        throw std::logic_error("PoissonModel::tail on a single-factor model");
    }
    return PoissonModel(std::vector<double>(lambdas_.begin() + 1, lambdas_.end()));
}

std::string to_string(Variant v) { return v == Variant::refined ? "refined" : "plain"; }

std::string to_string(PrefactorMode p) {
    return p == PrefactorMode::exact_hessian ? "exact-hessian" : "asymptotic";
}

Variant parse_variant(const std::string& s) {
    if (s == "refined") return Variant::refined;
    if (s == "plain") return Variant::plain;
    throw std::invalid_argument("unknown variant '" + s + "' (expected refined|plain)");
}

PrefactorMode parse_prefactor_mode(const std::string& s) {
    if (s == "exact-hessian" || s == "exact") return PrefactorMode::exact_hessian;
    if (s == "asymptotic") return PrefactorMode::asymptotic;
    throw std::invalid_argument("unknown prefactor mode '" + s + "' (expected exact-hessian|asymptotic)");
}

}  // namespace ppt
