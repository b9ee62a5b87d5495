#include "primstab/report_io.hpp"

#include <cmath>

#include "json.hpp"

namespace primstab {

using ojson = nlohmann::ordered_json;

namespace {

ojson number(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson class_json(const ClassRecord& r) {
  ojson j;
  j["p"] = r.slope.p;
  j["q"] = r.slope.q;
  j["len"] = r.length;
  j["tr"] = {number(r.trace.real()), number(r.trace.imag())};
  j["tl"] = number(r.translation);
  j["ratio"] = number(r.ratio);
  j["flags"] = r.flags;
  return j;
}

std::string csv_number(double x) {
  if (!std::isfinite(x)) return "";
  return ojson(x).dump();
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "|") + x;
  return s;
}

void class_csv(const ClassRecord& r, std::ostream& os) {
  os << r.slope.p << ',' << r.slope.q << ',' << r.length << ',' << csv_number(r.trace.real()) << ','
     << csv_number(r.trace.imag()) << ',' << csv_number(r.translation) << ',' << csv_number(r.ratio) << ','
     << joined(r.flags);
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "jsonl") return OutputFormat::jsonl;
  if (s == "csv") return OutputFormat::csv;
  throw PreconditionError("unknown output format '" + s + "'");
}

void write_bowditch(const BowditchReport& r, OutputFormat f, std::ostream& os) {
  const BowditchAggregate& a = r.aggregate;
  if (f == OutputFormat::jsonl) {
    for (const auto& c : r.records) os << class_json(c).dump() << '\n';
    ojson g;
    g["classes"] = a.classes;
    g["min_ratio"] = number(a.min_ratio);
    g["argmin"] = a.argmin.str();
    g["C"] = number(a.C);
    g["D"] = number(a.D);
    g["ls_C"] = number(a.ls_C);
    g["ls_D"] = number(a.ls_D);
    g["commutator_tr"] = {number(a.commutator_trace.real()), number(a.commutator_trace.imag())};
    g["min_abs_tr"] = number(a.min_abs_trace);
    g["small_trace"] = a.small_trace;
    g["violations"] = a.violations;
    g["fricke_deviation"] = number(a.fricke_deviation);
    os << ojson{{"aggregate", g}}.dump() << '\n';
    return;
  }
  os << "p,q,len,tr_re,tr_im,tl,ratio,flags\n";
  for (const auto& c : r.records) {
    class_csv(c, os);
    os << '\n';
  }
  os << "aggregate,,," << csv_number(a.commutator_trace.real()) << ',' << csv_number(a.commutator_trace.imag())
     << ",," << csv_number(a.min_ratio) << ",violations=" << a.violations << '\n';
}

void write_ps(const PsReport& r, OutputFormat f, std::ostream& os) {
  const PsAggregate& a = r.aggregate;
  if (f == OutputFormat::jsonl) {
    for (const auto& c : r.records) {
      ojson j = class_json(c.base);
      j["lower_ratio"] = number(c.lower_ratio);
      j["additive"] = number(c.additive);
      j["tubular_radius"] = number(c.tubular_radius);
      j["projection"] = {{"applicable", c.projection.applicable},
                         {"stride", c.projection.stride},
                         {"monotone", c.projection.monotone}};
      os << j.dump() << '\n';
    }
    ojson g;
    g["classes"] = a.classes;
    g["min_lower_ratio"] = number(a.min_lower_ratio);
    g["max_additive"] = number(a.max_additive);
    g["max_tubular_radius"] = number(a.max_tubular_radius);
    g["C"] = number(a.bowditch_C);
    g["D"] = number(a.bowditch_D);
    g["threshold"] = number(a.threshold);
    g["projection_checked"] = a.projection_checked;
    g["violations"] = a.violations;
    os << ojson{{"aggregate", g}}.dump() << '\n';
    return;
  }
  os << "p,q,len,tr_re,tr_im,tl,ratio,flags,lower_ratio,additive,tubular_radius,projection_stride,projection_monotone\n";
  for (const auto& c : r.records) {
    class_csv(c.base, os);
    os << ',' << csv_number(c.lower_ratio) << ',' << csv_number(c.additive) << ',' << csv_number(c.tubular_radius)
       << ',' << (c.projection.applicable ? std::to_string(c.projection.stride) : "") << ','
       << (c.projection.applicable ? (c.projection.monotone ? "1" : "0") : "") << '\n';
  }
  os << "aggregate,,,,,,,violations=" << a.violations << ',' << csv_number(a.min_lower_ratio) << ','
     << csv_number(a.max_additive) << ',' << csv_number(a.max_tubular_radius) << ",,\n";
}

}  // namespace primstab
