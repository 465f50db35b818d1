#include "nlparab/kernel_spec.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

namespace nlparab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ',';
    out += fmt(vs[i]);
  }
  return out;
}

const std::string& need(const KernelSpec& spec, const std::string& key) {
  auto it = spec.find(key);
  if (it == spec.end()) {
    throw std::invalid_argument("kernel spec missing field: " + key);
  }
  return it->second;
}

double parse_num(const std::string& text, const std::string& key) {
  const char* s = text.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  while (end && *end == ' ') ++end;
  if (end == s || !end || *end != '\0') {
    throw std::invalid_argument("kernel spec field is not a number: " + key);
  }
  return v;
}

double need_num(const KernelSpec& spec, const std::string& key) {
  return parse_num(need(spec, key), key);
}

double opt_num(const KernelSpec& spec, const std::string& key, double fallback) {
  auto it = spec.find(key);
  return it == spec.end() ? fallback : parse_num(it->second, key);
}

std::vector<double> need_list(const KernelSpec& spec, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(need(spec, key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_num(item, key));
  if (out.empty()) {
    throw std::invalid_argument("kernel spec field is empty: " + key);
  }
  return out;
}

Kernel apply_class(Kernel k, const KernelSpec& spec) {
  const double a0 = opt_num(spec, "alpha0", k.alpha0());
  const double lam = opt_num(spec, "lambda", k.lambda());
  return k.with_class(a0, lam);
}

}  // namespace

Kernel kernel_from_spec(const KernelSpec& spec) {
  const std::string& kind = need(spec, "kind");

  if (kind == "fractional") {
    const int dim = static_cast<int>(need_num(spec, "dim"));
    const double alpha = need_num(spec, "alpha");
    if (spec.count("coef")) {
      Kernel k(dim, alpha, PowerProfile{need_num(spec, "coef")});
      return apply_class(k, spec);
    }
    Normalization norm = Normalization::exact;
    if (auto it = spec.find("normalization"); it != spec.end()) {
      if (it->second == "exact") {
        norm = Normalization::exact;
      } else if (it->second == "two_minus_alpha") {
        norm = Normalization::two_minus_alpha;
      } else {
        throw std::invalid_argument(
            "kernel spec field is not a normalization: normalization");
      }
    }
    return apply_class(make_fractional(dim, alpha, norm), spec);
  }

  if (kind == "sequence") {
    const int n = static_cast<int>(need_num(spec, "n"));
    const int dim = static_cast<int>(opt_num(spec, "dim", 1));
    return apply_class(make_sequence_kernel(n, dim), spec);
  }

  if (kind == "cone") {
    const double alpha = need_num(spec, "alpha");
    const Point axis{need_num(spec, "axis_x"), need_num(spec, "axis_y")};
    const double aperture = need_num(spec, "aperture");
    Kernel base = make_cone_kernel(alpha, axis, aperture);
    if (spec.count("coef")) {
      ConeProfile p = std::get<ConeProfile>(base.profile());
      p.coef = need_num(spec, "coef");
      base = Kernel(base.dim(), alpha, p);
    }
    return apply_class(base, spec);
  }

  if (kind == "custom-table") {
    const int dim = static_cast<int>(need_num(spec, "dim"));
    const double alpha = need_num(spec, "alpha");
    TableProfile p;
    p.near_coef = need_num(spec, "near_coef");
    p.near_alpha = need_num(spec, "near_alpha");
    p.radii = need_list(spec, "radii");
    p.values = need_list(spec, "values");
    p.tail_coef = need_num(spec, "tail_coef");
    p.tail_alpha = need_num(spec, "tail_alpha");
    if (p.radii.size() != p.values.size()) {
      throw std::invalid_argument(
          "kernel spec field lengths differ: radii, values");
    }
    return apply_class(make_table_kernel(dim, alpha, std::move(p)), spec);
  }

  throw std::invalid_argument("kernel spec field has unknown value: kind");
}

KernelSpec kernel_to_spec(const Kernel& kernel) {
  if (kernel.has_coefficient()) {
    throw std::invalid_argument("kernels with coefficients do not serialize");
  }
  KernelSpec spec;
  spec["dim"] = fmt(kernel.dim());
  spec["alpha"] = fmt(kernel.alpha());
  spec["alpha0"] = fmt(kernel.alpha0());
  spec["lambda"] = fmt(kernel.lambda());

  if (const auto* p = std::get_if<PowerProfile>(&kernel.profile())) {
    spec["kind"] = "fractional";
    spec["coef"] = fmt(p->coef);
    return spec;
  }
  if (const auto* p = std::get_if<ConeProfile>(&kernel.profile())) {
    spec["kind"] = "cone";
    spec["coef"] = fmt(p->coef);
    spec["axis_x"] = fmt(p->axis[0]);
    spec["axis_y"] = fmt(p->axis[1]);
    spec["aperture"] = fmt(p->aperture);
    return spec;
  }
  if (const auto* p = std::get_if<TableProfile>(&kernel.profile())) {
    spec["kind"] = "custom-table";
    spec["near_coef"] = fmt(p->near_coef);
    spec["near_alpha"] = fmt(p->near_alpha);
    spec["radii"] = fmt_list(p->radii);
    spec["values"] = fmt_list(p->values);
    spec["tail_coef"] = fmt(p->tail_coef);
    spec["tail_alpha"] = fmt(p->tail_alpha);
    return spec;
  }
  throw std::invalid_argument("custom densities do not serialize");
}

}  // namespace nlparab
