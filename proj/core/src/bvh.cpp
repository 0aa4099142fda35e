// Copyright 2026 The rnktm Authors.
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

#include "rnktm/bvh.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "rnktm/error.hpp"

namespace rnktm::mocap {

bool is_rotation(Channel c) {
  return c == Channel::kXrotation || c == Channel::kYrotation || c == Channel::kZrotation;
}

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::kXposition: return "Xposition";
    case Channel::kYposition: return "Yposition";
    case Channel::kZposition: return "Zposition";
    case Channel::kXrotation: return "Xrotation";
    case Channel::kYrotation: return "Yrotation";
    case Channel::kZrotation: return "Zrotation";
  }
  return "?";
}

std::optional<Channel> parse_channel(std::string_view name) {
  for (auto c : {Channel::kXposition, Channel::kYposition, Channel::kZposition,
                 Channel::kXrotation, Channel::kYrotation, Channel::kZrotation}) {
    if (channel_name(c) == name) return c;
  }
  return std::nullopt;
}

SkeletonRig::SkeletonRig(std::vector<Joint> joints, std::vector<EndSite> end_sites)
    : joints_(std::move(joints)), end_sites_(std::move(end_sites)) {
  if (joints_.empty()) throw ValidationError("rig has no joints");
  channel_offsets_.reserve(joints_.size());
  for (std::size_t j = 0; j < joints_.size(); ++j) {
    const Joint& joint = joints_[j];
    if (j == 0 && joint.parent) throw ValidationError("root joint must not have a parent");
    if (j > 0 && (!joint.parent || *joint.parent >= j)) {
      throw ValidationError("joint '" + joint.name + "' must reference an earlier parent");
    }
    int rotations = 0;
    int translations = 0;
    for (Channel c : joint.channels) (is_rotation(c) ? rotations : translations)++;
    if (rotations != 3) {
      throw ValidationError("joint '" + joint.name + "' must declare exactly 3 rotation channels");
    }
    if (translations != 0 && (j != 0 || translations != 3)) {
      throw ValidationError("joint '" + joint.name +
                            "': translation channels are only allowed as a triple on the root");
    }
    channel_offsets_.push_back(channel_count_);
    channel_count_ += joint.channels.size();
  }
  for (const EndSite& e : end_sites_) {
    if (e.parent >= joints_.size()) throw ValidationError("end site references unknown joint");
  }
}

std::optional<std::size_t> SkeletonRig::find_joint(std::string_view name) const {
  for (std::size_t j = 0; j < joints_.size(); ++j) {
    if (joints_[j].name == name) return j;
  }
  return std::nullopt;
}

MotionSequence::MotionSequence(double frame_time, std::vector<std::vector<double>> frames,
                               std::size_t channel_count)
    : frame_time_(frame_time), frames_(std::move(frames)) {
  if (!(frame_time_ > 0.0) || !std::isfinite(frame_time_)) {
    throw ValidationError("frame time must be positive");
  }
  for (std::size_t f = 0; f < frames_.size(); ++f) {
    if (frames_[f].size() != channel_count) {
      throw ValidationError("frame " + std::to_string(f) + " has " +
                            std::to_string(frames_[f].size()) + " values, rig declares " +
                            std::to_string(channel_count));
    }
  }
}

namespace {

// Whitespace tokenizer that remembers the line of each token.
class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  bool next(std::string_view& tok) {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    tok = text_.substr(start, pos_ - start);
    tok_line_ = line_;
    return true;
  }

  std::string_view expect(const char* what) {
    std::string_view tok;
    if (!next(tok)) throw ParseError(line_, std::string("unexpected end of file, expected ") + what);
    return tok;
  }

  void expect_keyword(std::string_view kw) {
    auto tok = expect(std::string(kw).c_str());
    if (tok != kw) {
      throw ParseError(tok_line_, "expected '" + std::string(kw) + "', got '" + std::string(tok) + "'");
    }
  }

  double number(const char* what) {
    auto tok = expect(what);
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v)) {
      throw ParseError(tok_line_, std::string("invalid number for ") + what + ": '" +
                                      std::string(tok) + "'");
    }
    return v;
  }

  std::size_t count(const char* what) {
    auto tok = expect(what);
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw ParseError(tok_line_, std::string("invalid count for ") + what + ": '" +
                                      std::string(tok) + "'");
    }
    return v;
  }

  std::size_t line() const { return tok_line_; }
  std::size_t current_line() const { return line_; }

  // Rest of the current line (used for joint names that may contain spaces).
  std::string_view rest_of_line() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '\r') ++pos_;
    tok_line_ = line_;
    auto s = text_.substr(start, pos_ - start);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t tok_line_ = 1;
};

Eigen::Vector3d read_offset(Tokenizer& tz) {
  tz.expect_keyword("OFFSET");
  Eigen::Vector3d o;
  o.x() = tz.number("OFFSET x");
  o.y() = tz.number("OFFSET y");
  o.z() = tz.number("OFFSET z");
  return o;
}

void parse_joint_body(Tokenizer& tz, std::size_t self, std::vector<Joint>& joints,
                      std::vector<EndSite>& ends) {
  tz.expect_keyword("{");
  joints[self].offset = read_offset(tz);
  tz.expect_keyword("CHANNELS");
  const std::size_t line = tz.line();
  const std::size_t n = tz.count("channel count");
  for (std::size_t i = 0; i < n; ++i) {
    auto name = tz.expect("channel name");
    auto c = parse_channel(name);
    if (!c) throw ParseError(tz.line(), "unknown channel '" + std::string(name) + "'");
    joints[self].channels.push_back(*c);
  }
  int rotations = 0;
  for (Channel c : joints[self].channels) rotations += is_rotation(c) ? 1 : 0;
  if (rotations != 3 || (n != 3 && !(n == 6 && self == 0))) {
    throw ParseError(line, "joint '" + joints[self].name +
                               "' must declare 3 rotation channels (plus 3 positions on the root)");
  }

  for (;;) {
    auto tok = tz.expect("JOINT, End Site or '}'");
    if (tok == "}") return;
    if (tok == "JOINT") {
      auto name = tz.rest_of_line();
      if (name.empty()) throw ParseError(tz.line(), "JOINT without a name");
      Joint child;
      child.name = std::string(name);
      child.parent = self;
      joints.push_back(std::move(child));
      parse_joint_body(tz, joints.size() - 1, joints, ends);
    } else if (tok == "End") {
      tz.expect_keyword("Site");
      tz.expect_keyword("{");
      EndSite e;
      e.parent = self;
      e.offset = read_offset(tz);
      tz.expect_keyword("}");
      ends.push_back(e);
    } else {
      throw ParseError(tz.line(), "unexpected token '" + std::string(tok) + "' in hierarchy");
    }
  }
}

}  // namespace

Bvh parse_bvh(std::string_view text, const BvhParseOptions& options) {
  Tokenizer tz(text);
  tz.expect_keyword("HIERARCHY");
  auto root_kw = tz.expect("ROOT");
  if (root_kw != "ROOT") throw ParseError(tz.line(), "expected ROOT");
  auto root_name = tz.rest_of_line();
  if (root_name.empty()) throw ParseError(tz.line(), "ROOT without a name");

  std::vector<Joint> joints(1);
  joints[0].name = std::string(root_name);
  std::vector<EndSite> ends;
  parse_joint_body(tz, 0, joints, ends);

  tz.expect_keyword("MOTION");
  tz.expect_keyword("Frames:");
  const std::size_t declared = tz.count("frame count");
  tz.expect_keyword("Frame");
  tz.expect_keyword("Time:");
  const std::size_t time_line = tz.line();
  const double frame_time = tz.number("frame time");
  if (!(frame_time > 0.0)) throw ParseError(time_line, "frame time must be positive");

  SkeletonRig rig;
  try {
    rig = SkeletonRig(std::move(joints), std::move(ends));
  } catch (const ValidationError& e) {
    throw ParseError(1, e.what());
  }

  const std::size_t nch = rig.channel_count();
  std::vector<std::vector<double>> frames;
  frames.reserve(declared);
  // One frame per line. Collecting whole lines first lets a short file report
  // the frame deficit rather than a generic token error.
  std::vector<std::pair<std::size_t, std::vector<double>>> lines;
  std::string_view tok;
  std::size_t last_line = tz.current_line();
  while (tz.next(tok)) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v)) {
      throw ParseError(tz.line(), "invalid motion value '" + std::string(tok) + "'");
    }
    if (lines.empty() || lines.back().first != tz.line()) lines.emplace_back(tz.line(), std::vector<double>{});
    lines.back().second.push_back(v);
    last_line = tz.line();
  }
  for (std::size_t f = 0; f < lines.size(); ++f) {
    if (lines[f].second.size() != nch) {
      throw ParseError(lines[f].first, "frame " + std::to_string(f) + " has " +
                                           std::to_string(lines[f].second.size()) + " values, expected " +
                                           std::to_string(nch));
    }
  }
  const std::size_t present = lines.size();
  if (present != declared) {
    const std::string detail =
        present < declared
            ? "missing " + std::to_string(declared - present) + " frame(s)"
            : std::to_string(present - declared) + " extra frame(s)";
    throw ParseError(last_line, "MOTION declares " + std::to_string(declared) + " frames but " +
                                    std::to_string(present) + " are present (" + detail + ")");
  }
  if (present < options.min_frames) {
    throw ValidationError("sequence has " + std::to_string(present) + " frames, need at least " +
                          std::to_string(options.min_frames));
  }
  for (auto& l : lines) frames.push_back(std::move(l.second));
  MotionSequence motion(frame_time, std::move(frames), nch);
  return Bvh{std::move(rig), std::move(motion)};
}

std::string write_bvh(const SkeletonRig& rig, const MotionSequence& motion) {
  std::ostringstream out;
  out << std::setprecision(10);
  const auto& joints = rig.joints();
  const auto& ends = rig.end_sites();

  // children lists preserve the rig's topological order
  std::vector<std::vector<std::size_t>> kids(joints.size());
  std::vector<std::vector<std::size_t>> end_kids(joints.size());
  for (std::size_t j = 1; j < joints.size(); ++j) kids[*joints[j].parent].push_back(j);
  for (std::size_t e = 0; e < ends.size(); ++e) end_kids[ends[e].parent].push_back(e);

  std::size_t visited = 0;
  auto write_joint = [&](auto&& self, std::size_t j, int depth) -> void {
    if (j != visited++) {
      throw ValidationError("rig joints are not in depth-first order; cannot write BVH");
    }
    const std::string ind(static_cast<std::size_t>(depth) * 2, ' ');
    out << ind << (j == 0 ? "ROOT " : "JOINT ") << joints[j].name << "\n";
    out << ind << "{\n";
    const auto& o = joints[j].offset;
    out << ind << "  OFFSET " << o.x() << " " << o.y() << " " << o.z() << "\n";
    out << ind << "  CHANNELS " << joints[j].channels.size();
    for (Channel c : joints[j].channels) out << " " << channel_name(c);
    out << "\n";
    for (std::size_t k : kids[j]) self(self, k, depth + 1);
    for (std::size_t e : end_kids[j]) {
      const auto& eo = ends[e].offset;
      out << ind << "  End Site\n" << ind << "  {\n";
      out << ind << "    OFFSET " << eo.x() << " " << eo.y() << " " << eo.z() << "\n";
      out << ind << "  }\n";
    }
    out << ind << "}\n";
  };
  out << "HIERARCHY\n";
  write_joint(write_joint, 0, 0);
  out << "MOTION\n";
  out << "Frames: " << motion.frame_count() << "\n";
  out << "Frame Time: " << motion.frame_time() << "\n";
  for (const auto& frame : motion.frames()) {
    for (std::size_t i = 0; i < frame.size(); ++i) out << (i ? " " : "") << frame[i];
    out << "\n";
  }
  return out.str();
}

}  // namespace rnktm::mocap
