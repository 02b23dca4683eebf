#include "proofdeck/pkg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "proofdeck/lexer.hpp"
#include "proofdeck/vernac.hpp"

namespace proofdeck::pkg {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_keys(const json& obj, std::initializer_list<std::string_view> keys, std::string_view what) {
  if (!obj.is_object()) throw ManifestError(std::string(what) + " must be a JSON object");
  for (auto key : keys)
    if (!obj.contains(key)) throw ManifestError("missing key: " + std::string(key));
  for (const auto& [key, _] : obj.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ManifestError("unknown key: " + key);
}

std::vector<std::string> string_list(const json& value, std::string_view key) {
  if (!value.is_array()) throw ManifestError(std::string(key) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) throw ManifestError(std::string(key) + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool has_suffix(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

void check_file_name(const std::string& name, std::string_view key) {
  if (name.empty() || name.find_first_of("/\\") != std::string::npos || name == "." || name == "..")
    throw ManifestError("invalid file name in " + std::string(key) + ": \"" + name + "\"");
}

Package package_from_json(const json& obj) {
  require_keys(obj, {"pkg_id", "vo_files", "cma_files"}, "package");
  Package p;
  p.pkg_id = string_list(obj["pkg_id"], "pkg_id");
  if (p.pkg_id.empty()) throw ManifestError("pkg_id must not be empty");
  for (const auto& seg : p.pkg_id)
    if (!is_identifier(seg)) throw ManifestError("invalid pkg_id segment \"" + seg + "\"");
  p.vo_files = string_list(obj["vo_files"], "vo_files");
  p.cma_files = string_list(obj["cma_files"], "cma_files");
  for (const auto& f : p.vo_files) {
    check_file_name(f, "vo_files");
    if (!has_suffix(f, ".v") && !has_suffix(f, ".vo"))
      throw ManifestError("vo_files entry \"" + f + "\" must end in .v or .vo");
    if (!is_identifier(module_stem(f))) throw ManifestError("invalid module name \"" + f + "\"");
  }
  for (const auto& f : p.cma_files) check_file_name(f, "cma_files");
  return p;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("missing file " + path.generic_string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LogicalPath module_name(const LogicalPath& pkg_id, std::string_view file) {
  LogicalPath name = pkg_id;
  name.push_back(module_stem(file));
  return name;
}

}  // namespace

namespace {
json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestError(std::string("invalid JSON: ") + e.what());
  }
}
}  // namespace

Package parse_package(std::string_view text) { return package_from_json(parse_json(text)); }

Bundle parse_bundle(std::string_view text) {
  const json doc = parse_json(text);
  require_keys(doc, {"desc", "deps", "pkgs"}, "bundle");
  Bundle b;
  if (!doc["desc"].is_string() || doc["desc"].get<std::string>().empty())
    throw ManifestError("desc must be a non-empty string");
  b.desc = doc["desc"].get<std::string>();
  b.deps = string_list(doc["deps"], "deps");
  if (!doc["pkgs"].is_array()) throw ManifestError("pkgs must be an array of packages");
  for (const auto& p : doc["pkgs"]) b.pkgs.push_back(package_from_json(p));
  return b;
}

std::string to_json(const Bundle& bundle, int indent) {
  nlohmann::ordered_json pkgs = nlohmann::ordered_json::array();
  for (const auto& p : bundle.pkgs)
    pkgs.push_back({{"pkg_id", p.pkg_id}, {"vo_files", p.vo_files}, {"cma_files", p.cma_files}});
  nlohmann::ordered_json doc{{"desc", bundle.desc}, {"deps", bundle.deps}, {"pkgs", std::move(pkgs)}};
  return doc.dump(indent);
}

std::string physical_path(const LogicalPath& logical) {
  if (logical.empty()) throw std::invalid_argument("physical_path: empty logical path");
  std::string out;
  for (const auto& seg : logical) out += seg + "/";
  return out;
}

std::string module_stem(std::string_view vo_file) {
  if (has_suffix(vo_file, ".vo")) return std::string(vo_file.substr(0, vo_file.size() - 3));
  if (has_suffix(vo_file, ".v")) return std::string(vo_file.substr(0, vo_file.size() - 2));
  return std::string(vo_file);
}

std::string source_file(std::string_view vo_file) { return module_stem(vo_file) + ".v"; }

LoadedModule execute_module(const LogicalPath& name, std::string_view source,
                            const ModuleResolver& resolver) {
  const std::string where = "in module " + dotted(name) + ": ";
  std::vector<Sentence> sentences;
  try {
    sentences = split(source);
  } catch (const LexError& e) {
    throw LoadError(where + e.what() + " at offset " + std::to_string(e.offset()));
  }

  ProofEnv env;
  std::optional<ProofState> proof;
  std::set<std::string> imported;
  for (const auto& s : sentences) {
    try {
      const Vernac v = parse_vernac(s.text);
      if (const auto* req = std::get_if<vernac::RequireImport>(&v); req && resolver && !env.has_imported(req->module)) {
        auto lemmas = resolver(req->module);
        for (const auto& [k, _] : *lemmas) imported.insert(k);
      }
      auto r = exec_vernac(env, proof, v, resolver);
      env = std::move(r.env);
      proof = std::move(r.proof);
    } catch (const ParseError& e) {
      throw LoadError(where + e.what() + " at offset " + std::to_string(s.start + e.offset()));
    } catch (const ExecError& e) {
      throw LoadError(where + e.what() + " at offset " + std::to_string(s.start));
    } catch (const LoadError& e) {
      throw LoadError(where + e.what());
    }
  }
  if (proof) throw LoadError(where + "proof of " + proof->lemma_name + " not finished");

  auto own = std::make_shared<LemmaMap>();
  for (const auto& [k, p] : env.lemmas())
    if (!imported.contains(k)) own->emplace(k, p);
  return {name, std::move(own)};
}

Manager::Manager(std::vector<fs::path> roots) : roots_(std::move(roots)) {}

void Manager::add_root(const fs::path& root) {
  if (std::find(roots_.begin(), roots_.end(), root) == roots_.end()) roots_.push_back(root);
}

Bundle Manager::read_bundle(const fs::path& base, const std::string& name) const {
  const fs::path file = base / (name + ".json");
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ManifestError("cannot find bundle " + name + " at " + file.generic_string());
  std::ostringstream ss;
  ss << in.rdbuf();
  Bundle b = parse_bundle(ss.str());
  if (b.desc != name) throw ManifestError("bundle file " + name + ".json declares desc \"" + b.desc + "\"");
  return b;
}

void Manager::load_bundle(const fs::path& base, const std::string& name, const LoadEvents& events) {
  // Resolve the full dependency order before touching any module file.
  std::vector<Bundle> order;
  std::vector<std::string> stack;
  std::set<std::string> done;
  std::function<void(const std::string&)> visit = [&](const std::string& b) {
    if (done.contains(b) || loaded_bundles_.contains(b)) return;
    if (auto it = std::find(stack.begin(), stack.end(), b); it != stack.end()) {
      std::string cycle;
      for (; it != stack.end(); ++it) cycle += (cycle.empty() ? "" : ", ") + *it;
      throw LoadError("dependency cycle: " + cycle);
    }
    Bundle bundle;
    try {
      bundle = read_bundle(base, b);
    } catch (const ManifestError& e) {
      throw LoadError(e.what());
    }
    stack.push_back(b);
    for (const auto& dep : bundle.deps) visit(dep);
    stack.pop_back();
    done.insert(b);
    order.push_back(std::move(bundle));
  };
  visit(name);

  add_root(base);
  for (const auto& bundle : order) {
    for (const auto& p : bundle.pkgs) {
      std::vector<std::string> pending;
      for (const auto& f : p.vo_files) {
        const LogicalPath mod = module_name(p.pkg_id, f);
        if (modules_.contains(mod)) {
          if (events.warning) events.warning("module " + dotted(mod) + " already loaded; keeping the first copy");
        } else {
          pending.push_back(f);
        }
      }
      const int total = static_cast<int>(pending.size());
      int loaded = 0;
      for (const auto& f : pending) {
        const LogicalPath mod = module_name(p.pkg_id, f);
        const fs::path file = base / physical_path(p.pkg_id) / source_file(f);
        const std::string source = read_file(file);
        modules_.emplace(mod, execute_module(mod, source, loaded_only()));
        ++loaded;
        if (events.progress) events.progress(ProgressInfo{bundle.desc, p.pkg_id, loaded, total});
      }
    }
    loaded_bundles_.insert(bundle.desc);
    if (events.loaded) events.loaded(bundle.desc);
  }
}

ModuleResolver Manager::loaded_only() const {
  return [this](const LogicalPath& module) -> std::shared_ptr<const LemmaMap> {
    if (const auto* m = find(module)) return m->lemmas;
    throw LoadError("cannot find module " + dotted(module));
  };
}

const LoadedModule* Manager::find(const LogicalPath& module) const {
  auto it = modules_.find(module);
  return it == modules_.end() ? nullptr : &it->second;
}

bool Manager::on_loadpath(const LogicalPath& module) const {
  if (module.size() < 2) return false;
  for (const auto& prefix : loadpath_)
    if (!prefix.empty() && prefix.size() < module.size() &&
        std::equal(prefix.begin(), prefix.end(), module.begin()))
      return true;
  return false;
}

std::shared_ptr<const LemmaMap> Manager::require(const LogicalPath& module) {
  if (const auto* m = find(module)) return m->lemmas;
  if (!on_loadpath(module)) throw LoadError("cannot find module " + dotted(module));
  return load_from_roots(module);
}

std::shared_ptr<const LemmaMap> Manager::load_from_roots(const LogicalPath& module) {
  const LogicalPath dir(module.begin(), module.end() - 1);
  for (const auto& root : roots_) {
    const fs::path file = root / physical_path(dir) / (module.back() + ".v");
    if (!fs::is_regular_file(file)) continue;
    if (in_progress_.contains(module)) throw LoadError("module cycle through " + dotted(module));
    in_progress_.insert(module);
    try {
      auto loaded = execute_module(module, read_file(file),
                                   [this](const LogicalPath& m) { return require(m); });
      in_progress_.erase(module);
      return modules_.emplace(module, std::move(loaded)).first->second.lemmas;
    } catch (...) {
      in_progress_.erase(module);
      throw;
    }
  }
  throw LoadError("cannot find module " + dotted(module));
}

}  // namespace proofdeck::pkg
