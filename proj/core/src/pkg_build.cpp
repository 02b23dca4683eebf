#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "proofdeck/lexer.hpp"
#include "proofdeck/pkg.hpp"
#include "proofdeck/vernac.hpp"

namespace proofdeck::pkg {
namespace fs = std::filesystem;

namespace {

struct SourceModule {
  LogicalPath pkg_id;
  std::string file;  // e.g. Base.v
  fs::path path;
  std::vector<LogicalPath> requires_;

  LogicalPath name() const {
    LogicalPath n = pkg_id;
    n.push_back(module_stem(file));
    return n;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw LoadError("cannot read " + p.generic_string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<LogicalPath> scan_requires(const fs::path& file) {
  const std::string text = slurp(file);
  std::vector<LogicalPath> out;
  std::vector<Sentence> sentences;
  try {
    sentences = split(text);
  } catch (const LexError& e) {
    throw LoadError(file.generic_string() + ": " + e.what() + " at offset " + std::to_string(e.offset()));
  }
  for (const auto& s : sentences) {
    try {
      if (auto v = parse_vernac(s.text); auto* req = std::get_if<vernac::RequireImport>(&v))
        out.push_back(req->module);
    } catch (const ParseError& e) {
      throw LoadError(file.generic_string() + ": " + e.what() + " at offset " +
                      std::to_string(s.start + e.offset()));
    }
  }
  return out;
}

std::vector<std::string> read_deps(const fs::path& file) {
  std::vector<std::string> deps;
  if (!fs::exists(file)) return deps;
  std::istringstream in(slurp(file));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    deps.push_back(line.substr(b, e - b + 1));
  }
  return deps;
}

struct BundleSource {
  std::string name;
  std::vector<std::string> deps;
  std::vector<SourceModule> modules;
};

BundleSource collect(const fs::path& dir) {
  BundleSource b{dir.filename().string(), read_deps(dir / "DEPS"), {}};
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".v") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const fs::path rel = fs::relative(f.parent_path(), dir);
    LogicalPath pkg_id;
    for (const auto& seg : rel)
      if (seg != ".") pkg_id.push_back(seg.string());
    if (pkg_id.empty())
      throw LoadError(f.generic_string() + ": module files must live in a package directory");
    for (const auto& seg : pkg_id)
      if (!is_identifier(seg)) throw LoadError(f.generic_string() + ": invalid package directory \"" + seg + "\"");
    if (!is_identifier(f.stem().string()))
      throw LoadError(f.generic_string() + ": invalid module name");
    b.modules.push_back({std::move(pkg_id), f.filename().string(), f, scan_requires(f)});
  }
  return b;
}

// Orders modules so that in-bundle requirements come first. Ties break by
// logical name, which keeps the output stable.
std::vector<std::size_t> order_modules(const BundleSource& b) {
  std::map<LogicalPath, std::size_t> index;
  for (std::size_t i = 0; i < b.modules.size(); ++i) index.emplace(b.modules[i].name(), i);

  std::vector<std::vector<std::size_t>> users(b.modules.size());
  std::vector<int> pending(b.modules.size(), 0);
  for (std::size_t i = 0; i < b.modules.size(); ++i)
    for (const auto& req : b.modules[i].requires_)
      if (auto it = index.find(req); it != index.end()) {
        users[it->second].push_back(i);
        ++pending[i];
      }

  auto later = [&](std::size_t a, std::size_t c) { return b.modules[a].name() > b.modules[c].name(); };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
  for (std::size_t i = 0; i < b.modules.size(); ++i)
    if (pending[i] == 0) ready.push(i);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const auto i = ready.top();
    ready.pop();
    order.push_back(i);
    for (auto u : users[i])
      if (--pending[u] == 0) ready.push(u);
  }
  if (order.size() != b.modules.size()) {
    std::string stuck;
    for (std::size_t i = 0; i < b.modules.size(); ++i)
      if (pending[i] > 0) stuck += (stuck.empty() ? "" : ", ") + dotted(b.modules[i].name());
    throw LoadError("bundle " + b.name + ": module dependency cycle among " + stuck);
  }
  return order;
}

}  // namespace

std::vector<Bundle> build_tree(const fs::path& srcdir, const fs::path& outroot) {
  if (!fs::is_directory(srcdir)) throw LoadError("not a directory: " + srcdir.generic_string());

  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(srcdir))
    if (entry.is_directory()) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());

  std::map<std::string, BundleSource> sources;
  for (const auto& d : dirs) {
    auto b = collect(d);
    sources.emplace(b.name, std::move(b));
  }

  // Every required module must come from the bundle itself or a dependency.
  std::map<std::string, std::set<LogicalPath>> visible;
  std::function<const std::set<LogicalPath>&(const std::string&, std::vector<std::string>&)> reach =
      [&](const std::string& name, std::vector<std::string>& stack) -> const std::set<LogicalPath>& {
    if (auto it = visible.find(name); it != visible.end()) return it->second;
    if (std::find(stack.begin(), stack.end(), name) != stack.end())
      throw LoadError("dependency cycle through bundle " + name);
    auto src = sources.find(name);
    if (src == sources.end()) throw LoadError("unknown dependency bundle " + name);
    stack.push_back(name);
    std::set<LogicalPath> mods;
    for (const auto& m : src->second.modules) mods.insert(m.name());
    for (const auto& dep : src->second.deps) {
      const auto& sub = reach(dep, stack);
      mods.insert(sub.begin(), sub.end());
    }
    stack.pop_back();
    return visible.emplace(name, std::move(mods)).first->second;
  };

  std::vector<Bundle> out;
  fs::create_directories(outroot);
  for (auto& [name, src] : sources) {
    std::vector<std::string> stack;
    const auto& mods = reach(name, stack);
    for (const auto& m : src.modules)
      for (const auto& req : m.requires_)
        if (!mods.contains(req))
          throw LoadError(m.path.generic_string() + ": requires " + dotted(req) +
                          ", which is not provided by bundle " + name + " or its dependencies");

    // Packages appear in the order their first module does.
    const auto order = order_modules(src);
    Bundle bundle{name, src.deps, {}};
    std::map<LogicalPath, std::size_t> pkg_index;
    for (auto i : order) {
      const auto& m = src.modules[i];
      auto [it, fresh] = pkg_index.emplace(m.pkg_id, bundle.pkgs.size());
      if (fresh) bundle.pkgs.push_back(Package{m.pkg_id, {}, {}});
      bundle.pkgs[it->second].vo_files.push_back(m.file);
    }

    // Grouping by package must not put a module before what it requires.
    std::set<LogicalPath> in_bundle, seen;
    for (const auto& m : src.modules) in_bundle.insert(m.name());
    for (const auto& p : bundle.pkgs)
      for (const auto& f : p.vo_files) {
        LogicalPath name_path = p.pkg_id;
        name_path.push_back(module_stem(f));
        const auto& m = *std::find_if(src.modules.begin(), src.modules.end(),
                                      [&](const SourceModule& s) { return s.name() == name_path; });
        for (const auto& req : m.requires_)
          if (in_bundle.contains(req) && !seen.contains(req))
            throw LoadError("bundle " + name + ": packages cannot be ordered; " + dotted(name_path) +
                            " requires " + dotted(req) + " from a later package");
        seen.insert(name_path);
      }

    for (const auto& m : src.modules) {
      const fs::path dest_dir = outroot / physical_path(m.pkg_id);
      fs::create_directories(dest_dir);
      fs::copy_file(m.path, dest_dir / m.file, fs::copy_options::overwrite_existing);
    }
    std::ofstream manifest(outroot / (name + ".json"), std::ios::binary);
    manifest << to_json(bundle, 2) << '\n';
    if (!manifest) throw LoadError("cannot write manifest for " + name);
    out.push_back(std::move(bundle));
  }
  return out;
}

}  // namespace proofdeck::pkg
