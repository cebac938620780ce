#include "untangle/network.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace untangle {

namespace {

void check_activation(const ActivationSpec& a) {
    switch (a.kind) {
        case ActivationSpec::Kind::ReLU:
            break;
        case ActivationSpec::Kind::LeakyReLU:
            if (!(a.alpha >= 0.0)) throw std::invalid_argument("activation: alpha must be >= 0");
            break;
        case ActivationSpec::Kind::ELU:
            if (!(a.alpha > 0.0)) throw std::invalid_argument("activation: alpha must be > 0");
            break;
        case ActivationSpec::Kind::SELU:
            if (!(a.alpha > 0.0) || !(a.lambda > 0.0))
                throw std::invalid_argument("activation: alpha and lambda must be > 0");
            break;
    }
}

std::string kind_name(ActivationSpec::Kind k) {
    switch (k) {
        case ActivationSpec::Kind::ReLU: return "relu";
        case ActivationSpec::Kind::LeakyReLU: return "leaky_relu";
        case ActivationSpec::Kind::ELU: return "elu";
        case ActivationSpec::Kind::SELU: return "selu";
    }
    throw std::logic_error("activation: unknown kind");
}

ActivationSpec::Kind kind_from_name(const std::string& s) {
    if (s == "relu") return ActivationSpec::Kind::ReLU;
    if (s == "leaky_relu") return ActivationSpec::Kind::LeakyReLU;
    if (s == "elu") return ActivationSpec::Kind::ELU;
    if (s == "selu") return ActivationSpec::Kind::SELU;
    throw std::invalid_argument("activation: unknown kind '" + s + "'");
}

}  // namespace

double activation_eval(const ActivationSpec& a, double x) {
    switch (a.kind) {
        case ActivationSpec::Kind::ReLU:
            return x > 0.0 ? x : 0.0;
        case ActivationSpec::Kind::LeakyReLU:
            return x > 0.0 ? x : a.alpha * x;
        case ActivationSpec::Kind::ELU:
            return x > 0.0 ? x : a.alpha * std::expm1(x);
        case ActivationSpec::Kind::SELU:
            return a.lambda * (x > 0.0 ? x : a.alpha * std::expm1(x));
    }
    throw std::logic_error("activation: unknown kind");
}

void Network::validate() const {
    if (layers.empty()) throw std::invalid_argument("network: at least one layer required");
    check_activation(activation);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const AffineLayer& l = layers[i];
        if (l.w.rows == 0 || l.w.cols == 0)
            throw std::invalid_argument("network: empty layer matrix");
        if (l.b.size() != l.w.rows)
            throw std::invalid_argument("network: bias size mismatch");
        if (i > 0 && l.w.cols != layers[i - 1].w.rows)
            throw std::invalid_argument("network: layer dimension chain broken");
    }
}

std::size_t Network::input_dim() const {
    if (layers.empty()) throw std::invalid_argument("network: no layers");
    return layers.front().w.cols;
}

std::size_t Network::output_dim() const {
    if (layers.empty()) throw std::invalid_argument("network: no layers");
    return layers.back().w.rows;
}

Vec network_eval(const Network& net, const Vec& x) {
    if (net.layers.empty()) throw std::invalid_argument("network_eval: no layers");
    if (x.size() != net.input_dim())
        throw std::invalid_argument("network_eval: input dimension mismatch");
    Vec v = x;
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        const AffineLayer& l = net.layers[i];
        Vec next(l.w.rows);
        for (std::size_t r = 0; r < l.w.rows; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < l.w.cols; ++c) acc += l.w.at(r, c) * v[c];
            next[r] = acc + l.b[r];
        }
        if (i + 1 < net.layers.size())
            for (double& t : next) t = activation_eval(net.activation, t);
        v = std::move(next);
    }
    return v;
}

PointCloud network_eval(const Network& net, const PointCloud& cloud) {
    PointCloud out = cloud;
    for (Vec& p : out.points) p = network_eval(net, p);
    return out;
}

std::size_t network_width(const Network& net) {
    if (net.layers.empty()) throw std::invalid_argument("network_width: no layers");
    std::size_t w = 0;
    for (std::size_t i = 0; i + 1 < net.layers.size(); ++i)
        w = std::max(w, net.layers[i].w.rows);
    return w;
}

double sup_error(const Network& a, const Network& b, const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (const Vec& x : samples) worst = std::max(worst, dist2(network_eval(a, x), network_eval(b, x)));
    return worst;
}

double parse_weight_token(const std::string& tok) {
    std::size_t i = 0, end = tok.size();
    while (i < end && std::isspace(static_cast<unsigned char>(tok[i]))) ++i;
    while (end > i && std::isspace(static_cast<unsigned char>(tok[end - 1]))) --end;
    if (i == end) throw std::invalid_argument("weight token: empty");

    double sign = 1.0;
    if (tok[i] == '-') {
        sign = -1.0;
        ++i;
    } else if (tok[i] == '+') {
        ++i;
    }

    auto parse_number = [&](std::size_t from, std::size_t to) {
        std::size_t used = 0;
        double v = std::stod(tok.substr(from, to - from), &used);
        if (used != to - from) throw std::invalid_argument("weight token: trailing junk in '" + tok + "'");
        return v;
    };

    if (tok.compare(i, 5, "sqrt(") == 0) {
        std::size_t close = tok.find(')', i + 5);
        if (close == std::string::npos || close >= end)
            throw std::invalid_argument("weight token: unterminated sqrt in '" + tok + "'");
        double radicand = parse_number(i + 5, close);
        if (!(radicand >= 0.0)) throw std::invalid_argument("weight token: negative radicand");
        double v = std::sqrt(radicand);
        std::size_t rest = close + 1;
        if (rest < end) {
            if (tok[rest] != '/')
                throw std::invalid_argument("weight token: expected '/' in '" + tok + "'");
            double den = parse_number(rest + 1, end);
            if (den == 0.0) throw std::invalid_argument("weight token: division by zero");
            v /= den;
        }
        return sign * v;
    }
    return sign * parse_number(i, end);
}

Network network_from_json(const nlohmann::json& j) {
    Network net;
    const auto& act = j.at("activation");
    net.activation.kind = kind_from_name(act.at("kind").get<std::string>());
    if (act.contains("params")) {
        const auto& p = act.at("params");
        if (p.contains("alpha")) net.activation.alpha = p.at("alpha").get<double>();
        if (p.contains("lambda")) net.activation.lambda = p.at("lambda").get<double>();
    }
    for (const auto& lj : j.at("layers")) {
        AffineLayer l;
        std::size_t rows = lj.at("rows").get<std::size_t>();
        std::size_t cols = lj.at("cols").get<std::size_t>();
        const auto& ws = lj.at("weights");
        if (ws.size() != rows * cols)
            throw std::invalid_argument("network: weights length != rows*cols");
        l.w = Mat(rows, cols);
        for (std::size_t k = 0; k < ws.size(); ++k)
            l.w.a[k] = ws[k].is_string() ? parse_weight_token(ws[k].get<std::string>())
                                         : ws[k].get<double>();
        const auto& bs = lj.at("bias");
        if (bs.size() != rows) throw std::invalid_argument("network: bias length != rows");
        for (const auto& v : bs)
            l.b.push_back(v.is_string() ? parse_weight_token(v.get<std::string>())
                                        : v.get<double>());
        net.layers.push_back(std::move(l));
    }
    net.validate();
    return net;
}

nlohmann::json network_to_json(const Network& net) {
    net.validate();
    nlohmann::json layers = nlohmann::json::array();
    for (const AffineLayer& l : net.layers) {
        layers.push_back({{"rows", l.w.rows},
                          {"cols", l.w.cols},
                          {"weights", l.w.a},
                          {"bias", l.b}});
    }
    nlohmann::json act{{"kind", kind_name(net.activation.kind)},
                       {"params", {{"alpha", net.activation.alpha},
                                   {"lambda", net.activation.lambda}}}};
    return {{"activation", std::move(act)}, {"layers", std::move(layers)}};
}

}  // namespace untangle
