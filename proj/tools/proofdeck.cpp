// proofdeck: engine server, package builder and literate document generator.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "proofdeck/engine.hpp"
#include "proofdeck/lexer.hpp"
#include "proofdeck/pkg.hpp"
#include "proofdeck/server.hpp"
#include "proofdeck/udoc.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> loadpath_roots(const std::vector<std::string>& flags) {
  std::vector<fs::path> roots(flags.begin(), flags.end());
  if (roots.empty()) {
    if (const char* env = std::getenv("PROOFDECK_LOADPATH")) {
      std::stringstream ss(env);
      std::string item;
      while (std::getline(ss, item, ':'))
        if (!item.empty()) roots.emplace_back(item);
    }
  }
  return roots;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_serve(bool stdio, const std::string& listen, const std::vector<std::string>& loadpath,
              const std::string& log_file) {
  std::unique_ptr<std::ofstream> log;
  if (!log_file.empty()) {
    log = std::make_unique<std::ofstream>(log_file, std::ios::app);
    if (!*log) {
      std::cerr << "proofdeck: cannot open log file " << log_file << "\n";
      return 1;
    }
  }
  const auto roots = loadpath_roots(loadpath);
  if (stdio == !listen.empty()) {
    std::cerr << "proofdeck serve: pass exactly one of --stdio or --listen\n";
    return 2;
  }
  std::ios::sync_with_stdio(false);
  if (stdio) {
    proofdeck::Engine engine(roots);
    proofdeck::StreamChannel channel(std::cin, std::cout);
    proofdeck::serve(channel, engine, log.get());
    return 0;
  }
  proofdeck::listen_and_serve(listen, roots, log.get());
  return 0;
}

int run_doc(const fs::path& input, const fs::path& output, const std::string& title, const std::string& loader,
            bool standalone) {
  const std::string src = read_all(input);
  std::vector<proofdeck::udoc::DocChunk> chunks;
  try {
    chunks = proofdeck::udoc::chunk(src);
  } catch (const proofdeck::LexError& e) {
    std::cerr << input.string() << ": offset " << e.offset() << ": " << e.what() << "\n";
    return 1;
  } catch (const proofdeck::udoc::UdocError& e) {
    std::cerr << input.string() << ": offset " << e.offset() << ": " << e.what() << "\n";
    return 1;
  }
  proofdeck::udoc::HtmlOptions opts;
  opts.title = title.empty() ? input.stem().string() : title;
  opts.loader = loader;
  if (standalone) {
    const fs::path script = fs::path(loader) / "js" / "proofdeck-loader.js";
    if (!fs::exists(script)) {
      std::cerr << "proofdeck doc: --standalone needs " << script.string() << "\n";
      return 1;
    }
    opts.inline_loader = read_all(script);
  }
  std::ofstream out(output, std::ios::binary);
  out << proofdeck::udoc::emit_html(chunks, opts);
  if (!out) {
    std::cerr << "proofdeck doc: cannot write " << output.string() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proofdeck: incremental proof-document engine"};
  app.require_subcommand(1);

  auto* serve = app.add_subcommand("serve", "Run the engine over the JSON-lines protocol");
  bool stdio = false;
  std::string listen, log_file;
  std::vector<std::string> loadpath;
  serve->add_flag("--stdio", stdio, "Serve on stdin/stdout");
  serve->add_option("--listen", listen, "Serve on a TCP address (host:port or port)");
  serve->add_option("--loadpath", loadpath, "Package root directory (repeatable)");
  serve->add_option("--log", log_file, "Append the raw transcript to this file");

  auto* pkg = app.add_subcommand("pkg", "Package tools");
  pkg->require_subcommand(1);
  auto* build = pkg->add_subcommand("build", "Generate bundle manifests from a source tree");
  std::string srcdir, outroot;
  build->add_option("srcdir", srcdir, "Source tree, one directory per bundle")->required();
  build->add_option("-o,--output", outroot, "Package root to write")->required();

  auto* doc = app.add_subcommand("doc", "Generate an interactive HTML page from a literate script");
  std::string input, output, title, loader = "./";
  bool standalone = false;
  doc->add_option("input", input, "Literate .v source")->required();
  doc->add_option("-o,--output", output, "HTML file to write")->required();
  doc->add_option("--title", title, "Page title (default: input file stem)");
  doc->add_option("--loader", loader, "Asset root for the loader script")->capture_default_str();
  doc->add_flag("--standalone", standalone, "Inline the loader script into the page");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return run_serve(stdio, listen, loadpath, log_file);
    if (*build) {
      const auto bundles = proofdeck::pkg::build_tree(srcdir, outroot);
      for (const auto& b : bundles) {
        std::size_t files = 0;
        for (const auto& p : b.pkgs) files += p.vo_files.size();
        std::cout << b.desc << ": " << b.pkgs.size() << " packages, " << files << " modules\n";
      }
      return 0;
    }
    if (*doc) return run_doc(input, output, title, loader, standalone);
  } catch (const std::exception& e) {
    std::cerr << "proofdeck: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
