#include "trollscope/json_io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "trollscope/error.hpp"

namespace trollscope {

using nlohmann::json;

namespace {

// Runs a parsing step, turning nlohmann's type/lookup errors into kParse.
template <typename F>
auto parse_step(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

json bba_to_json(const MassFunction& bba) {
  json out = json::array();
  for (const auto& f : bba.focal_elements()) {
    out.push_back({{"set", bba.frame().labels_of(f.set)}, {"mass", f.mass}});
  }
  return out;
}

MassFunction bba_from_json(const Frame& frame, const json& doc) {
  std::vector<FocalElement> focal;
  for (const auto& entry : doc) {
    auto labels = parse_step("bba entry", [&] { return entry.at("set").get<std::vector<std::string>>(); });
    const double mass = parse_step("bba entry", [&] { return entry.at("mass").get<double>(); });
    focal.push_back({frame.subset_of(labels), mass});
  }
  return make_mass(frame, focal);
}

json category_to_json(const ScriptEntry& entry) {
  json out = {{"author", entry.author}, {"category", std::string(to_string(entry.category.kind))}};
  if (entry.category.kind == CategoryKind::kControversy) out["topic"] = entry.category.topic;
  return out;
}

}  // namespace

json thread_to_json(const Thread& thread, const std::optional<GeneratorInfo>& generator) {
  json messages = json::array();
  for (const auto& msg : thread.messages()) {
    messages.push_back({{"rank", msg.rank}, {"author", msg.author}, {"bba", bba_to_json(msg.bba)}});
  }
  json out = {{"topic_count", thread.frame().topic_count()},
              {"relevant_topic", thread.frame().relevant_topic()},
              {"users", thread.users()},
              {"messages", std::move(messages)}};
  if (generator) out["generator"] = {{"algorithm", generator->algorithm}, {"seed", generator->seed}};
  return out;
}

Thread thread_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "thread document must be a JSON object");
  const int topic_count = parse_step("topic_count", [&] { return doc.at("topic_count").get<int>(); });
  const int relevant = parse_step("relevant_topic", [&] { return doc.at("relevant_topic").get<int>(); });
  auto users = parse_step("users", [&] { return doc.at("users").get<std::vector<UserId>>(); });
  MessageFrame frame(topic_count, relevant);

  const json& raw_messages = parse_step("messages", [&]() -> const json& { return doc.at("messages"); });
  if (!raw_messages.is_array()) throw Error(ErrorCode::kParse, "messages must be an array");
  std::vector<Message> messages;
  for (const auto& raw : raw_messages) {
    const auto rank = parse_step("message rank", [&] { return raw.at("rank").get<std::size_t>(); });
    auto author = parse_step("message author", [&] { return raw.at("author").get<UserId>(); });
    const json& bba = parse_step("message bba", [&]() -> const json& { return raw.at("bba"); });
    if (!bba.is_array()) throw Error(ErrorCode::kParse, "bba must be an array");
    messages.push_back({std::move(author), rank, bba_from_json(frame.frame(), bba)});
  }
  return Thread(std::move(frame), std::move(users), std::move(messages));
}

json scenario_to_json(const ScenarioSpec& spec) {
  json users = json::array();
  for (const auto& u : spec.users) users.push_back({{"id", u.id}, {"role", std::string(to_string(u.role))}});
  json script = json::array();
  for (const auto& entry : spec.script) script.push_back(category_to_json(entry));
  json pinned = json::array();
  for (const auto& [rank, mass] : spec.pinned) pinned.push_back({{"rank", rank}, {"mass", mass}});
  return {{"topic_count", spec.topic_count},
          {"relevant_topic", spec.relevant_topic},
          {"users", std::move(users)},
          {"script", std::move(script)},
          {"seed", spec.seed},
          {"concentration", {spec.concentration_lo, spec.concentration_hi}},
          {"pinned", std::move(pinned)}};
}

ScenarioSpec scenario_from_json(const json& doc) {
  try {
    ScenarioSpec spec;
    spec.topic_count = doc.at("topic_count").get<int>();
    spec.relevant_topic = doc.at("relevant_topic").get<int>();
    for (const auto& u : doc.at("users")) {
      spec.users.push_back({u.at("id").get<UserId>(), role_from_string(u.value("role", "learner"))});
    }
    for (const auto& e : doc.at("script")) {
      Category category{category_kind_from_string(e.at("category").get<std::string>()), 0};
      if (category.kind == CategoryKind::kControversy) category.topic = e.at("topic").get<int>();
      spec.script.push_back({e.at("author").get<UserId>(), category});
    }
    spec.seed = doc.value("seed", std::uint64_t{0});
    if (doc.contains("concentration")) {
      const auto range = doc.at("concentration").get<std::vector<double>>();
      if (range.size() != 2) throw Error(ErrorCode::kInvalidSpec, "concentration must be [lo, hi]");
      spec.concentration_lo = range[0];
      spec.concentration_hi = range[1];
    }
    std::vector<std::pair<std::size_t, double>> pins;
    if (doc.contains("pinned")) {
      for (const auto& p : doc.at("pinned")) {
        pins.emplace_back(p.at("rank").get<std::size_t>(), p.at("mass").get<double>());
      }
    }
    spec = pin_masses(std::move(spec), pins);
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, std::string("scenario: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidSpec) throw;
    throw Error(ErrorCode::kInvalidSpec, e.what());
  }
}

json report_to_json(const ReportDocument& doc) {
  const ConflictReport& r = doc.report;
  json users = json::array();
  for (const auto& uc : r.per_user) {
    users.push_back({{"user", uc.user},
                     {"messages", uc.message_count},
                     {"conf_user", uc.conflict},
                     {"class", r.is_troll(uc.user) ? "troll" : "other"}});
  }
  json messages = json::array();
  for (const auto& mc : r.per_message) {
    json shares = json::array();
    for (const auto& s : mc.per_user) {
      shares.push_back({{"user", s.user}, {"prior_count", s.prior_count}, {"conf", s.conflict}});
    }
    messages.push_back({{"rank", mc.rank},
                        {"author", mc.author},
                        {"prior_count", mc.prior_count},
                        {"conf_msg", mc.conflict},
                        {"per_user", std::move(shares)}});
  }
  return {{"users", std::move(users)},
          {"messages", std::move(messages)},
          {"partition",
           {{"trolls", r.trolls},
            {"others", r.others},
            {"troll_center", r.troll_center},
            {"other_center", r.other_center},
            {"iterations", r.kmeans_iterations}}},
          {"run",
           {{"tool", "trollscope"},
            {"version", doc.run.tool_version},
            {"input", doc.run.input},
            {"elapsed_ms", doc.run.elapsed_ms},
            {"generated_at", doc.run.generated_at}}}};
}

ReportDocument report_from_json(const json& doc) {
  return parse_step("report", [&] {
    ReportDocument out;
    ConflictReport& r = out.report;
    for (const auto& u : doc.at("users")) {
      r.per_user.push_back({u.at("user").get<UserId>(), u.at("messages").get<std::size_t>(),
                            u.at("conf_user").get<double>()});
    }
    for (const auto& m : doc.at("messages")) {
      MessageConflict mc;
      mc.rank = m.at("rank").get<std::size_t>();
      mc.author = m.at("author").get<UserId>();
      mc.prior_count = m.at("prior_count").get<std::size_t>();
      mc.conflict = m.at("conf_msg").get<double>();
      for (const auto& s : m.at("per_user")) {
        mc.per_user.push_back({s.at("user").get<UserId>(), s.at("prior_count").get<std::size_t>(),
                               s.at("conf").get<double>()});
      }
      r.per_message.push_back(std::move(mc));
    }
    const json& p = doc.at("partition");
    r.trolls = p.at("trolls").get<std::vector<UserId>>();
    r.others = p.at("others").get<std::vector<UserId>>();
    r.troll_center = p.at("troll_center").get<double>();
    r.other_center = p.at("other_center").get<double>();
    r.kmeans_iterations = p.at("iterations").get<std::size_t>();
    const json& run = doc.at("run");
    out.run.tool_version = run.at("version").get<std::string>();
    out.run.input = run.at("input").get<std::string>();
    out.run.elapsed_ms = run.at("elapsed_ms").get<double>();
    out.run.generated_at = run.at("generated_at").get<std::string>();
    return out;
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void write_text_file_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << text;
    out.close();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

}  // namespace trollscope
