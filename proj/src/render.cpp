#include "tick/render.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace tick {

using ordered_json = nlohmann::ordered_json;

std::string instance_label(const UnrolledProgram& up, int t, int i) {
  const auto& th = up.thread(t);
  const auto& s = th.stmt(i);
  std::string name = th.name + ".";
  name += s.kind == UKind::Sleep ? "sleep" : s.origin_label;
  if (s.iteration > 0) name += "[" + std::to_string(s.iteration) + "]";
  return name;
}

std::string render_schedule_table(const Schedule& schedule, const UnrolledProgram& up) {
  std::ostringstream out;
  out << "  round  statement           start    end\n";
  for (const auto& r : schedule.rounds) {
    if (!r.executed) {
      out << "  " << std::setw(5) << r.k << "  (all terminated)\n";
      continue;
    }
    const auto [t, i] = *r.executed;
    out << "  " << std::setw(5) << r.k << "  " << std::left << std::setw(18)
        << instance_label(up, t, i) << std::right << " " << std::setw(6) << (r.x - up.thread(t).stmt(i).duration)
        << " " << std::setw(6) << r.x << "\n";
    const auto& th = up.thread(t);
    if (i + 1 <= th.size() && th.stmt(i + 1).kind == UKind::Sleep) {
      const auto wake = schedule.end_times.at({t, i + 1});
      out << "         ~ " << th.name << " sleeps [" << r.x << ", " << wake << ")\n";
    }
  }
  bool header = false;
  for (const auto& [key, e] : schedule.end_times) {
    const auto& th = up.thread(key.first);
    if (th.is_ordinary(key.second)) continue;
    if (key.second != 1) continue;  // initial sleeps only; others shown inline
    if (!header) {
      out << "  initial sleeps:";
      header = true;
    }
    out << " " << th.name << " until " << e << ";";
  }
  if (header) out << "\n";
  return out.str();
}

std::string render_verify_text(const VerifyResult& result, const UnrolledProgram& up) {
  std::ostringstream out;
  switch (result.kind) {
    case VerdictKind::Holds:
      out << "HOLDS (bound N=" << result.rounds << ")\n";
      return out.str();
    case VerdictKind::Error:
      out << "ERROR: " << result.error << "\n";
      return out.str();
    case VerdictKind::Violated:
      break;
  }
  out << "VIOLATED (bound N=" << result.rounds << ")\n";
  out << "counterexample schedule:\n";
  out << render_schedule_table(*result.schedule, up);
  out << "violated:\n";
  for (const auto idx : result.failing) {
    const auto& inst = result.instances[idx];
    out << "  " << inst.display;
    if (inst.iteration > 0) out << "  (loop iteration " << inst.iteration << ")";
    out << "\n";
  }
  return out.str();
}

namespace {

ordered_json schedule_json(const Schedule& schedule, const UnrolledProgram& up) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : schedule.rounds) {
    ordered_json row;
    row["round"] = r.k;
    if (r.executed) {
      const auto [t, i] = *r.executed;
      const auto& th = up.thread(t);
      row["thread"] = th.name;
      row["label"] = th.stmt(i).origin_label;
      row["iteration"] = th.stmt(i).iteration;
      row["start"] = r.x - th.stmt(i).duration;
      row["end"] = r.x;
    } else {
      row["terminated"] = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string render_verify_json(const VerifyResult& result, const UnrolledProgram& up,
                               const std::string& input_path) {
  ordered_json doc;
  doc["command"] = "verify";
  doc["input"] = input_path;
  doc["bound"] = result.rounds;
  doc["unroll"] = up.loop_iterations;
  switch (result.kind) {
    case VerdictKind::Holds:
      doc["verdict"] = "holds";
      break;
    case VerdictKind::Violated: {
      doc["verdict"] = "violated";
      doc["counterexample"] = schedule_json(*result.schedule, up);
      ordered_json failing = ordered_json::array();
      for (const auto idx : result.failing) {
        const auto& inst = result.instances[idx];
        ordered_json f;
        f["instance"] = inst.display;
        f["iteration"] = inst.iteration;
        failing.push_back(std::move(f));
      }
      doc["violated_instances"] = std::move(failing);
      break;
    }
    case VerdictKind::Error:
      doc["verdict"] = "error";
      doc["error"] = result.error;
      break;
  }
  doc["formula_nodes"] = result.formula_nodes;
  ordered_json timings;
  timings["encode_seconds"] = result.timings.encode_seconds;
  timings["solve_seconds"] = result.timings.solve_seconds;
  doc["timings"] = std::move(timings);
  return doc.dump(2) + "\n";
}

}  // namespace tick
