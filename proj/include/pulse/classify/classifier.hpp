#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pulse/classify/gaussian.hpp"
#include "pulse/classify/kernel.hpp"
#include "pulse/classify/naive_bayes.hpp"
#include "pulse/classify/standardize.hpp"
#include "pulse/classify/svm.hpp"
#include "pulse/classify/tree.hpp"
#include "pulse/dataset.hpp"
#include "pulse/matrix.hpp"

namespace pulse {

enum class Method {
    LDA,
    NB,
    QDA,
    REG_TREE,
    SVM_LIN,
    SVM_MLP,
    SVM_POLY3,
    SVM_QUAD,
    SVM_RBF,
};

inline constexpr Method kAllMethods[] = {
    Method::LDA,      Method::NB,       Method::QDA,
    Method::REG_TREE, Method::SVM_LIN,  Method::SVM_MLP,
    Method::SVM_POLY3, Method::SVM_QUAD, Method::SVM_RBF,
};

inline std::string_view method_name(Method m) {
    switch (m) {
        case Method::LDA: return "LDA";
        case Method::NB: return "NB";
        case Method::QDA: return "QDA";
        case Method::REG_TREE: return "REG_TREE";
        case Method::SVM_LIN: return "SVM_LIN";
        case Method::SVM_MLP: return "SVM_MLP";
        case Method::SVM_POLY3: return "SVM_POLY3";
        case Method::SVM_QUAD: return "SVM_QUAD";
        case Method::SVM_RBF: return "SVM_RBF";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
    for (const Method m : kAllMethods)
        if (method_name(m) == name) return m;
    return std::nullopt;
}

inline bool is_svm(Method m) {
    return m == Method::SVM_LIN || m == Method::SVM_MLP ||
           m == Method::SVM_POLY3 || m == Method::SVM_QUAD ||
           m == Method::SVM_RBF;
}

inline KernelKind svm_kernel(Method m) {
    switch (m) {
        case Method::SVM_LIN: return KernelKind::linear;
        case Method::SVM_MLP: return KernelKind::mlp;
        case Method::SVM_POLY3: return KernelKind::poly3;
        case Method::SVM_QUAD: return KernelKind::quadratic;
        default: return KernelKind::rbf;
    }
}

// Method selection plus hyperparameter overrides. Missing keys take the
// documented defaults.
struct ClassifierSpec {
    Method method = Method::NB;
    std::map<std::string, double> hyper;

    double get(const std::string& key, double fallback) const {
        const auto it = hyper.find(key);
        return it == hyper.end() ? fallback : it->second;
    }

    double svm_c() const { return get("C", 1.0); }
    double svm_tol() const { return get("tol", 1e-3); }
    int svm_max_passes() const {
        return static_cast<int>(get("max_passes", 200));
    }
    size_t tree_min_leaf() const {
        return static_cast<size_t>(get("min_leaf", 5));
    }
    int tree_max_depth() const { return static_cast<int>(get("max_depth", 16)); }

    KernelParams kernel_params() const {
        KernelParams p;
        p.sigma = get("sigma", 1.0);
        p.slope = get("slope", 1.0);
        p.offset = get("offset", -1.0);
        return p;
    }

    void validate() const {
        if (is_svm(method)) {
            if (!(svm_c() > 0))
                throw std::invalid_argument("classifier: C must be positive");
            if (!(svm_tol() > 0))
                throw std::invalid_argument("classifier: tol must be positive");
            kernel_params().validate(svm_kernel(method));
        }
        if (method == Method::REG_TREE && tree_min_leaf() < 1)
            throw std::invalid_argument("classifier: min_leaf must be >= 1");
    }
};

struct TrainedModel {
    ClassifierSpec spec;
    Standardizer standardizer;
    std::variant<GaussianModel, NaiveBayesModel, RegressionTreeModel, SvmModel>
        model;

    bool converged() const {
        if (const auto* svm = std::get_if<SvmModel>(&model))
            return svm->converged;
        return true;
    }
};

// Trains on a raw (unstandardized) matrix with labels in {1, 2}.
inline TrainedModel fit(const ClassifierSpec& spec, const Matrix& x,
                        std::span<const int> labels) {
    spec.validate();
    if (x.rows == 0 || x.rows != labels.size())
        throw std::invalid_argument("fit: empty or mismatched training data");

    TrainedModel tm;
    tm.spec = spec;
    tm.standardizer = Standardizer::fit(x);
    const Matrix z = tm.standardizer.apply(x);

    switch (spec.method) {
        case Method::LDA: tm.model = fit_lda(z, labels); break;
        case Method::NB: tm.model = fit_naive_bayes(z, labels); break;
        case Method::QDA: tm.model = fit_qda(z, labels); break;
        case Method::REG_TREE:
            tm.model =
                fit_tree(z, labels, spec.tree_min_leaf(), spec.tree_max_depth());
            break;
        default:
            tm.model = fit_svm(svm_kernel(spec.method), spec.kernel_params(),
                               z, labels, spec.svm_c(), spec.svm_tol(),
                               spec.svm_max_passes());
            break;
    }
    return tm;
}

inline TrainedModel fit(const ClassifierSpec& spec, const LabeledDataset& ds) {
    Matrix x(ds.observations.size(), ds.catalog.size());
    std::vector<int> labels(ds.observations.size());
    for (size_t i = 0; i < ds.observations.size(); ++i) {
        for (size_t j = 0; j < ds.catalog.size(); ++j)
            x.at(i, j) = ds.observations[i].values[j];
        labels[i] = ds.observations[i].label;
    }
    return fit(spec, x, labels);
}

inline int predict(const TrainedModel& tm, std::span<const double> raw_x) {
    const std::vector<double> z = tm.standardizer.apply_vector(raw_x);
    return std::visit(
        [&](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SvmModel>)
                return m.predict(z);
            else
                return m.predict(z.data());
        },
        tm.model);
}

// --- JSON serialization (audit/debug; not a stability-guaranteed format) ---

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    Matrix m;
    m.rows = j.at("rows").get<size_t>();
    m.cols = j.at("cols").get<size_t>();
    m.data = j.at("data").get<std::vector<double>>();
    if (m.data.size() != m.rows * m.cols)
        throw std::runtime_error("model JSON: bad matrix shape");
    return m;
}

}  // namespace detail

inline nlohmann::json model_to_json(const TrainedModel& tm) {
    nlohmann::json j;
    j["version"] = 1;
    j["method"] = method_name(tm.spec.method);
    j["hyperparameters"] = tm.spec.hyper;
    j["standardization"] = {{"mean", tm.standardizer.mean},
                            {"stddev", tm.standardizer.stddev}};
    nlohmann::json p;
    if (const auto* g = std::get_if<GaussianModel>(&tm.model)) {
        p["kind"] = "gaussian";
        p["dim"] = g->dim;
        p["log_prior"] = g->log_prior;
        p["mean"] = {g->mean[0], g->mean[1]};
        p["chol"] = {g->chol[0], g->chol[1]};
        p["log_det"] = g->log_det;
    } else if (const auto* nb = std::get_if<NaiveBayesModel>(&tm.model)) {
        p["kind"] = "naive_bayes";
        p["dim"] = nb->dim;
        p["log_prior"] = nb->log_prior;
        p["mean"] = {nb->mean[0], nb->mean[1]};
        p["var"] = {nb->var[0], nb->var[1]};
    } else if (const auto* t = std::get_if<RegressionTreeModel>(&tm.model)) {
        p["kind"] = "tree";
        p["dim"] = t->dim;
        auto& nodes = p["nodes"] = nlohmann::json::array();
        for (const auto& n : t->nodes)
            nodes.push_back({{"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"value", n.value}});
    } else if (const auto* s = std::get_if<SvmModel>(&tm.model)) {
        p["kind"] = "svm";
        p["kernel"] = kernel_name(s->kind);
        p["sigma"] = s->params.sigma;
        p["slope"] = s->params.slope;
        p["offset"] = s->params.offset;
        p["support_x"] = detail::matrix_to_json(s->support_x);
        p["coef"] = s->coef;
        p["support_self_dot"] = s->support_self_dot;
        p["b"] = s->b;
        p["converged"] = s->converged;
    }
    j["parameters"] = std::move(p);
    return j;
}

inline TrainedModel model_from_json(const nlohmann::json& j) {
    if (j.at("version").get<int>() != 1)
        throw std::runtime_error("model JSON: unsupported version");
    TrainedModel tm;
    const auto method = parse_method(j.at("method").get<std::string>());
    if (!method) throw std::runtime_error("model JSON: unknown method");
    tm.spec.method = *method;
    tm.spec.hyper =
        j.at("hyperparameters").get<std::map<std::string, double>>();
    tm.standardizer.mean =
        j.at("standardization").at("mean").get<std::vector<double>>();
    tm.standardizer.stddev =
        j.at("standardization").at("stddev").get<std::vector<double>>();

    const auto& p = j.at("parameters");
    const auto kind = p.at("kind").get<std::string>();
    if (kind == "gaussian") {
        GaussianModel g;
        g.dim = p.at("dim").get<size_t>();
        g.log_prior = p.at("log_prior").get<std::array<double, 2>>();
        g.mean[0] = p.at("mean")[0].get<std::vector<double>>();
        g.mean[1] = p.at("mean")[1].get<std::vector<double>>();
        g.chol[0] = p.at("chol")[0].get<std::vector<double>>();
        g.chol[1] = p.at("chol")[1].get<std::vector<double>>();
        g.log_det = p.at("log_det").get<std::array<double, 2>>();
        tm.model = std::move(g);
    } else if (kind == "naive_bayes") {
        NaiveBayesModel nb;
        nb.dim = p.at("dim").get<size_t>();
        nb.log_prior = p.at("log_prior").get<std::array<double, 2>>();
        nb.mean[0] = p.at("mean")[0].get<std::vector<double>>();
        nb.mean[1] = p.at("mean")[1].get<std::vector<double>>();
        nb.var[0] = p.at("var")[0].get<std::vector<double>>();
        nb.var[1] = p.at("var")[1].get<std::vector<double>>();
        tm.model = std::move(nb);
    } else if (kind == "tree") {
        RegressionTreeModel t;
        t.dim = p.at("dim").get<size_t>();
        for (const auto& n : p.at("nodes"))
            t.nodes.push_back({n.at("feature").get<int>(),
                               n.at("threshold").get<double>(),
                               n.at("left").get<int>(),
                               n.at("right").get<int>(),
                               n.at("value").get<double>()});
        tm.model = std::move(t);
    } else if (kind == "svm") {
        SvmModel s;
        bool found = false;
        for (const KernelKind k :
             {KernelKind::linear, KernelKind::quadratic, KernelKind::poly3,
              KernelKind::mlp, KernelKind::rbf})
            if (kernel_name(k) == p.at("kernel").get<std::string>()) {
                s.kind = k;
                found = true;
            }
        if (!found) throw std::runtime_error("model JSON: unknown kernel");
        s.params.sigma = p.at("sigma").get<double>();
        s.params.slope = p.at("slope").get<double>();
        s.params.offset = p.at("offset").get<double>();
        s.support_x = detail::matrix_from_json(p.at("support_x"));
        s.coef = p.at("coef").get<std::vector<double>>();
        s.support_self_dot =
            p.at("support_self_dot").get<std::vector<double>>();
        s.b = p.at("b").get<double>();
        s.converged = p.at("converged").get<bool>();
        tm.model = std::move(s);
    } else {
        throw std::runtime_error("model JSON: unknown parameter kind");
    }
    return tm;
}

}  // namespace pulse
