#include "vidstop/harness/clip_io.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

namespace vidstop {
namespace {

using nlohmann::json;

Clip parse_record(const json& record, LoadDiagnostics* diagnostics) {
  if (!record.is_object()) throw ValidationError("record is not a JSON object");
  Clip clip;
  clip.id = record.at("id").get<std::string>();
  clip.alphabet = Alphabet(record.at("alphabet").get<std::string>());
  clip.truth = record.at("truth").get<std::string>();
  const std::size_t k = clip.alphabet.size();

  const json& frames = record.at("frames");
  if (!frames.is_array()) throw ValidationError("'frames' must be an array");
  clip.frames.reserve(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const json& frame = frames[f];
    const double weight = frame.value("w", 1.0);
    const auto rows = frame.at("rows").get<std::vector<std::vector<double>>>();
    try {
      clip.frames.push_back(make_frame(rows, k, weight, diagnostics));
    } catch (const ValidationError& e) {
      throw ValidationError("frame " + std::to_string(f) + ": " + e.what());
    }
  }
  clip.validate();
  return clip;
}

}  // namespace

std::vector<Clip> parse_clips(std::istream& in, LoadDiagnostics* diagnostics) {
  std::vector<Clip> clips;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      clips.push_back(parse_record(json::parse(line), diagnostics));
    } catch (const json::exception& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": malformed record: " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return clips;
}

std::vector<Clip> load_clips(const std::filesystem::path& path, LoadDiagnostics* diagnostics) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return parse_clips(in, diagnostics);
}

void write_clips(std::ostream& out, const std::vector<Clip>& clips) {
  for (const Clip& clip : clips) {
    json frames = json::array();
    for (const auto& frame : clip.frames) {
      json rows = json::array();
      for (const auto& row : frame.rows) {
        const auto values = row.values();
        rows.push_back(std::vector<double>(values.begin() + 1, values.end()));
      }
      json entry = {{"rows", std::move(rows)}};
      if (frame.weight != 1.0) entry["w"] = frame.weight;
      frames.push_back(std::move(entry));
    }
    const json record = {{"id", clip.id},
                         {"alphabet", clip.alphabet.symbols()},
                         {"truth", clip.truth},
                         {"frames", std::move(frames)}};
    out << record.dump() << '\n';
  }
}

void save_clips(const std::filesystem::path& path, const std::vector<Clip>& clips) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  write_clips(out, clips);
}

}  // namespace vidstop
