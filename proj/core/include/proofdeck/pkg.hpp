#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proofdeck/common.hpp"
#include "proofdeck/kernel.hpp"

namespace proofdeck::pkg {

/// One logical path and the module files it provides.
struct Package {
  LogicalPath pkg_id;
  std::vector<std::string> vo_files;
  std::vector<std::string> cma_files;
  friend bool operator==(const Package&, const Package&) = default;
};

/// A named set of packages plus the bundles it depends on.
struct Bundle {
  std::string desc;
  std::vector<std::string> deps;
  std::vector<Package> pkgs;
  friend bool operator==(const Bundle&, const Bundle&) = default;
};

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict manifest reader: exactly `desc`/`deps`/`pkgs` at the top and
/// `pkg_id`/`vo_files`/`cma_files` per package. Unknown keys are rejected.
Bundle parse_bundle(std::string_view json);
/// A single package object, with the same strictness.
Package parse_package(std::string_view json);

/// Inverse of parse_bundle; `indent < 0` gives a single line.
std::string to_json(const Bundle& bundle, int indent = -1);

/// `A.B.C` maps to `A/B/C/`. Throws std::invalid_argument for an empty path.
std::string physical_path(const LogicalPath& logical);

/// Source file backing a `vo_files` entry: `X.vo` and `X.v` both read `X.v`.
std::string source_file(std::string_view vo_file);
std::string module_stem(std::string_view vo_file);

struct ProgressInfo {
  std::string bundle;
  LogicalPath pkg_id;
  int files_loaded = 0;
  int files_total = 0;
  friend bool operator==(const ProgressInfo&, const ProgressInfo&) = default;
};

struct LoadedModule {
  LogicalPath name;
  std::shared_ptr<const LemmaMap> lemmas;
};

struct LoadEvents {
  std::function<void(const ProgressInfo&)> progress;
  std::function<void(const std::string& bundle)> loaded;
  std::function<void(const std::string& message)> warning;
};

/// Runs a module source through a fresh kernel environment. The result
/// holds only the lemmas the module itself defines.
LoadedModule execute_module(const LogicalPath& name, std::string_view source,
                            const ModuleResolver& resolver);

/// Tracks loaded modules and bundles, the package roots on disk and the
/// logical loadpath used for on-demand module loading.
class Manager {
 public:
  explicit Manager(std::vector<std::filesystem::path> roots = {});

  void add_root(const std::filesystem::path& root);
  const std::vector<std::filesystem::path>& roots() const noexcept { return roots_; }

  void set_loadpath(std::vector<LogicalPath> loadpath) { loadpath_ = std::move(loadpath); }
  const std::vector<LogicalPath>& loadpath() const noexcept { return loadpath_; }

  /// Reads and parses `<base>/<name>.json` without loading anything.
  Bundle read_bundle(const std::filesystem::path& base, const std::string& name) const;

  /// Loads `name` and its dependencies, dependencies first. Modules already
  /// loaded (from any bundle) are skipped with a warning.
  void load_bundle(const std::filesystem::path& base, const std::string& name,
                   const LoadEvents& events = {});

  /// Lemmas exported by `module`, loading it from the loadpath on demand.
  std::shared_ptr<const LemmaMap> require(const LogicalPath& module);

  const LoadedModule* find(const LogicalPath& module) const;
  bool bundle_loaded(const std::string& name) const { return loaded_bundles_.contains(name); }
  std::size_t module_count() const noexcept { return modules_.size(); }

 private:
  bool on_loadpath(const LogicalPath& module) const;
  std::shared_ptr<const LemmaMap> load_from_roots(const LogicalPath& module);
  ModuleResolver loaded_only() const;

  std::vector<std::filesystem::path> roots_;
  std::vector<LogicalPath> loadpath_;
  std::map<LogicalPath, LoadedModule> modules_;
  std::set<std::string> loaded_bundles_;
  std::set<LogicalPath> in_progress_;
};

/// Builds a package root from a source tree. Every directory under
/// `srcdir` is a bundle; inside it, each directory holding `.v` files is a
/// package whose logical path is the directory's relative path. An
/// optional `DEPS` file lists dependency bundles, one per line. Module
/// files are ordered so that `Require Import` targets load first. Writes
/// `<outroot>/<bundle>.json` and copies sources under their physical paths.
std::vector<Bundle> build_tree(const std::filesystem::path& srcdir,
                               const std::filesystem::path& outroot);

}  // namespace proofdeck::pkg
