#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "proofnet/depgraph.hpp"
#include "proofnet/errors.hpp"
#include "proofnet/json_io.hpp"
#include "proofnet/search.hpp"

using namespace proofnet;
using nlohmann::json;

namespace {

// exit codes: 0 ok, 2 syntax, 3 invariance, 4 shape, 5 invalid net, 1 other
constexpr int kExitSyntax = 2;
constexpr int kExitInvariance = 3;
constexpr int kExitShape = 4;
constexpr int kExitInvalidNet = 5;

void emit_error(const std::string& kind, const std::string& message, int code) {
  json j{{"error", message}, {"kind", kind}, {"code", code}};
  std::cerr << j.dump() << "\n";
}

template <typename F>
int run_guarded(F&& f) {
  try {
    return f();
  } catch (const SyntaxError& e) {
    emit_error("syntax", e.what(), kExitSyntax);
    return kExitSyntax;
  } catch (const WellFormednessError& e) {
    emit_error("syntax", e.what(), kExitSyntax);
    return kExitSyntax;
  } catch (const IllFormedSequence& e) {
    emit_error("ill-formed-sequence", e.what(), kExitSyntax);
    return kExitSyntax;
  } catch (const InvarianceViolated& e) {
    emit_error("invariance", e.what(), kExitInvariance);
    return kExitInvariance;
  } catch (const ShapeMismatch& e) {
    emit_error("shape", e.what(), kExitShape);
    return kExitShape;
  } catch (const MissingAtomTable& e) {
    emit_error("shape", e.what(), kExitShape);
    return kExitShape;
  } catch (const Exhausted& e) {
    emit_error("exhausted", e.what(), 1);
    return 1;
  } catch (const std::exception& e) {
    emit_error("error", e.what(), 1);
    return 1;
  }
}

struct Options {
  std::string vocab_path;
  std::string input;
  std::string frame_path;
  std::string structure_path;
  std::string scores_path;
  std::string out;
  std::string out_dir;
  std::string seq;
  std::string goal_text;
  std::string format = "text";
  bool random_scores = false;
  bool nets_only = false;
  bool with_types = false;
  std::uint64_t seed = 0;
  int iterations = kDefaultSinkhornIterations;
  std::uint64_t max_structures = 1'000'000;
  std::size_t max_atoms = 8;
  unsigned jobs = 0;
};

Vocabulary load_vocabulary(const Options& opt) {
  std::string path = opt.vocab_path;
  if (path.empty()) {
    if (const char* env = std::getenv("PROOFNET_VOCAB")) path = env;
  }
  if (path.empty()) return Vocabulary::defaults();
  return Vocabulary::from_json_file(path);
}

// Frame inputs may be sequent text or frame JSON; JSON starts with '{'.
ProofFrame load_frame(const std::string& path, const Vocabulary& vocab) {
  std::string text = read_file(path);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return frame_from_json(text, vocab);
  }
  Type goal = Type::atomic(Atom("x"));
  auto premises = parse_sequent_text(text, vocab, &goal);
  return build_frame(premises, goal);
}

std::vector<ScoreMatrix> gather_scores(const ProofFrame& frame, const Options& opt,
                                       std::uint64_t seed) {
  if (!opt.scores_path.empty()) {
    return scores_from_json(read_file(opt.scores_path), frame);
  }
  if (!opt.random_scores) {
    throw SyntaxError("either --scores FILE or --random is required", 0);
  }
  RandomScorer scorer(seed);
  std::vector<ScoreMatrix> scores;
  for (const AtomChains& chains : partition_atoms(frame)) {
    scores.push_back(scorer.score(frame, chains));
  }
  return scores;
}

json invariance_json(const InvarianceReport& report) {
  json counts = json::object();
  for (const auto& [atom, c] : report.counts) {
    counts[atom.token()] = {c.first, c.second};
  }
  return {{"ok", report.ok}, {"counts", counts}};
}

void write_or_print(const Options& opt, const std::string& content) {
  if (opt.out.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
  } else {
    write_file(opt.out, content);
  }
}

int cmd_frame(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  ProofFrame frame = load_frame(opt.input, vocab);
  InvarianceReport report = count_invariance(frame);
  std::string flattened = symbols_to_text(flatten_frame(frame));
  if (opt.format == "json") {
    json j{{"frame", json::parse(frame_to_json(frame, false))},
           {"flattened", flattened},
           {"invariance", invariance_json(report)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << flattened << "\n";
    std::cout << "atoms: " << frame.atom_count() << "\n";
    std::cout << "invariance: " << (report.ok ? "ok" : "violated");
    for (const auto& [atom, c] : report.counts) {
      std::cout << " " << atom.token() << "=" << c.first << "/" << c.second;
    }
    std::cout << "\n";
  }
  if (!opt.out.empty()) write_file(opt.out, frame_to_json(frame));
  if (!report.ok) {
    emit_error("invariance", "count invariance does not hold", kExitInvariance);
    return kExitInvariance;
  }
  return 0;
}

int cmd_flatten(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  ProofFrame frame = load_frame(opt.input, vocab);
  write_or_print(opt, symbols_to_text(flatten_frame(frame)) + "\n");
  return 0;
}

int cmd_validate_seq(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  std::string text = opt.seq.empty() ? read_file(opt.input) : opt.seq;
  std::vector<FrameSymbol> symbols = symbols_from_text(text, vocab);
  Type goal =
      opt.goal_text.empty() ? Type::atomic(Atom("x")) : parse_type(opt.goal_text, vocab);
  ProofFrame frame = parse_frame_sequence(symbols, goal);
  json j{{"ok", true}, {"premises", frame.premises.size()}, {"atoms", frame.atom_count()}};
  if (!opt.goal_text.empty()) {
    InvarianceReport report = count_invariance(frame);
    j["invariance"] = invariance_json(report);
    if (!report.ok) {
      std::cout << j.dump() << "\n";
      emit_error("invariance", "count invariance does not hold", kExitInvariance);
      return kExitInvariance;
    }
  }
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_link(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  ProofFrame frame = load_frame(opt.frame_path, vocab);
  ProofStructure structure =
      link_frame(frame, gather_scores(frame, opt, opt.seed), opt.iterations);
  write_or_print(opt, structure_to_json(structure));
  return 0;
}

int cmd_verify(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  ProofStructure s = structure_from_json(read_file(opt.structure_path), vocab);
  auto [verdict, term] = verify_and_extract(s);
  std::cout << verdict_to_json(verdict) << "\n";
  if (!verdict.valid) {
    emit_error("invalid-net", failure_name(*verdict.failure), kExitInvalidNet);
    return kExitInvalidNet;
  }
  return 0;
}

int cmd_term(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  ProofStructure s = structure_from_json(read_file(opt.structure_path), vocab);
  auto [verdict, term] = verify_and_extract(s);
  if (!verdict.valid) {
    std::cout << verdict_to_json(verdict) << "\n";
    emit_error("invalid-net", failure_name(*verdict.failure), kExitInvalidNet);
    return kExitInvalidNet;
  }
  if (opt.format == "json") {
    write_or_print(opt, term_to_json(*term));
  } else {
    write_or_print(opt, print_term(*term, opt.with_types) + "\n");
  }
  return 0;
}

int cmd_depgraph(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  ProofStructure s = structure_from_json(read_file(opt.structure_path), vocab);
  auto [verdict, term] = verify_and_extract(s);
  if (!verdict.valid) {
    std::cout << verdict_to_json(verdict) << "\n";
    emit_error("invalid-net", failure_name(*verdict.failure), kExitInvalidNet);
    return kExitInvalidNet;
  }
  DependencyGraph g = extract_depgraph(*term);
  write_or_print(opt, opt.format == "json" ? depgraph_to_json(g) : depgraph_to_tsv(g));
  return 0;
}

int cmd_enumerate(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  ProofFrame frame = load_frame(opt.frame_path, vocab);
  SearchBudget budget{opt.max_structures, opt.max_atoms};
  if (opt.nets_only) {
    NetEnumerator nets(frame, budget);
    while (auto net = nets.next()) {
      json j = json::parse(links_to_json(net->first));
      j["term"] = print_term(net->second);
      std::cout << j.dump() << "\n";
    }
  } else {
    StructureEnumerator structures(frame, budget);
    while (auto s = structures.next()) {
      std::cout << links_to_json(*s) << "\n";
    }
  }
  return 0;
}

json parse_pipeline(const std::string& sequent_text, const Vocabulary& vocab,
                    const Options& opt, std::uint64_t seed) {
  Type goal = Type::atomic(Atom("x"));
  auto premises = parse_sequent_text(sequent_text, vocab, &goal);
  ProofFrame frame = build_frame(premises, goal);
  json j{{"flattened", symbols_to_text(flatten_frame(frame))},
         {"invariance", invariance_json(count_invariance(frame))}};
  ProofStructure structure =
      link_frame(frame, gather_scores(frame, opt, seed), opt.iterations);
  j["links"] = json::parse(links_to_json(structure))["links"];
  auto [verdict, term] = verify_and_extract(structure);
  j["verdict"] = json::parse(verdict_to_json(verdict));
  if (verdict.valid) {
    j["term"] = print_term(*term, opt.with_types);
    j["term_ast"] = json::parse(term_to_json(*term, false));
    j["depgraph"] = json::parse(depgraph_to_json(extract_depgraph(*term), false));
    j["depgraph_tsv"] = depgraph_to_tsv(extract_depgraph(*term));
  }
  return j;
}

int cmd_parse(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  json j = parse_pipeline(read_file(opt.input), vocab, opt, opt.seed);
  if (opt.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << j["flattened"].get<std::string>() << "\n";
    if (j["verdict"]["valid"].get<bool>()) {
      std::cout << j["term"].get<std::string>() << "\n";
      std::cout << "--\n" << j["depgraph_tsv"].get<std::string>();
    } else {
      std::cout << j["verdict"].dump() << "\n";
    }
  }
  if (!j["verdict"]["valid"].get<bool>()) {
    emit_error("invalid-net", j["verdict"]["failure"].get<std::string>(), kExitInvalidNet);
    return kExitInvalidNet;
  }
  return 0;
}

int cmd_batch(const Options& opt) {
  Vocabulary vocab = load_vocabulary(opt);
  if (opt.scores_path.empty() && !opt.random_scores) {
    throw SyntaxError("batch requires --random (score files are per-sentence)", 0);
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(opt.input)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> outputs(files.size());
  std::vector<int> codes(files.size(), 0);
  std::atomic<std::size_t> cursor{0};
  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  if (!files.empty()) jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, files.size()));

  auto classify = [](const std::exception& e) -> int {
    if (dynamic_cast<const SyntaxError*>(&e)) return kExitSyntax;
    if (dynamic_cast<const WellFormednessError*>(&e)) return kExitSyntax;
    if (dynamic_cast<const IllFormedSequence*>(&e)) return kExitSyntax;
    if (dynamic_cast<const InvarianceViolated*>(&e)) return kExitInvariance;
    if (dynamic_cast<const ShapeMismatch*>(&e)) return kExitShape;
    if (dynamic_cast<const MissingAtomTable*>(&e)) return kExitShape;
    return 1;
  };

  auto worker = [&]() {
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= files.size()) break;
      json j{{"file", files[i].filename().string()}};
      try {
        // deterministic per-file seed
        std::uint64_t seed =
            opt.seed ^ std::hash<std::string>{}(files[i].filename().string());
        json result = parse_pipeline(read_file(files[i].string()), vocab, opt, seed);
        j["ok"] = result["verdict"]["valid"];
        j["result"] = result;
        codes[i] = result["verdict"]["valid"].get<bool>() ? 0 : kExitInvalidNet;
      } catch (const std::exception& e) {
        j["ok"] = false;
        j["error"] = e.what();
        codes[i] = classify(e);
      }
      outputs[i] = j.dump();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  for (std::size_t i = 0; i < files.size(); ++i) {
    if (opt.out_dir.empty()) {
      std::cout << outputs[i] << "\n";
    } else {
      std::filesystem::path out =
          std::filesystem::path(opt.out_dir) / (files[i].stem().string() + ".json");
      write_file(out.string(), outputs[i] + "\n");
    }
  }
  for (int code : codes) {
    if (code != 0) return code;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof-net engine for dependency-decorated linear types"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--vocab", opt.vocab_path,
                 "label vocabulary JSON (default: $PROOFNET_VOCAB or built-in)");

  CLI::App* frame = app.add_subcommand("frame", "decompose a sequent file into a proof frame");
  frame->add_option("--input", opt.input, "sequent file")->required();
  frame->add_option("--out", opt.out, "write frame JSON here");
  frame->add_option("--format", opt.format, "text|json");

  CLI::App* flatten = app.add_subcommand("flatten", "print the flattened symbol sequence");
  flatten->add_option("--input", opt.input, "sequent file or frame JSON")->required();
  flatten->add_option("--out", opt.out, "output file");

  CLI::App* validate = app.add_subcommand("validate-seq", "check a flattened symbol sequence");
  validate->add_option("--seq", opt.seq, "whitespace-separated symbols");
  validate->add_option("--input", opt.input, "file with the symbol sequence");
  validate->add_option("--goal", opt.goal_text, "goal type; adds the invariance check");

  CLI::App* link = app.add_subcommand("link", "sinkhorn-link a frame into a structure");
  link->add_option("--frame", opt.frame_path, "frame JSON or sequent file")->required();
  link->add_option("--scores", opt.scores_path, "score JSON");
  link->add_flag("--random", opt.random_scores, "draw random scores");
  link->add_option("--seed", opt.seed, "random score seed");
  link->add_option("--iterations", opt.iterations, "sinkhorn iterations (default 5)")
      ->check(CLI::PositiveNumber);
  link->add_option("--out", opt.out, "output file");

  CLI::App* verify = app.add_subcommand("verify", "check a structure for net correctness");
  verify->add_option("--structure", opt.structure_path, "structure JSON")->required();

  CLI::App* term = app.add_subcommand("term", "extract the lambda term of a valid net");
  term->add_option("--structure", opt.structure_path, "structure JSON")->required();
  term->add_flag("--with-types", opt.with_types, "annotate lexical constants");
  term->add_option("--out", opt.out, "output file");
  term->add_option("--format", opt.format, "text|json");

  CLI::App* depgraph = app.add_subcommand("depgraph", "dependency graph of a valid net");
  depgraph->add_option("--structure", opt.structure_path, "structure JSON")->required();
  depgraph->add_option("--out", opt.out, "output file");
  depgraph->add_option("--format", opt.format, "tsv|json")->default_str("tsv");

  CLI::App* enumerate = app.add_subcommand("enumerate", "list all structures (or nets)");
  enumerate->add_option("--frame", opt.frame_path, "frame JSON or sequent file")->required();
  enumerate->add_option("--max,--budget", opt.max_structures, "structure cap")
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--max-atoms", opt.max_atoms, "per-type occurrence cap (default 8)")
      ->check(CLI::PositiveNumber);
  enumerate->add_flag("--nets-only", opt.nets_only, "keep only valid nets, with terms");

  CLI::App* parse = app.add_subcommand("parse", "sequent file to verdict, term and graph");
  parse->add_option("--input", opt.input, "sequent file")->required();
  parse->add_option("--scores", opt.scores_path, "score JSON");
  parse->add_flag("--random", opt.random_scores, "draw random scores");
  parse->add_option("--seed", opt.seed, "random score seed");
  parse->add_option("--iterations", opt.iterations, "sinkhorn iterations (default 5)")
      ->check(CLI::PositiveNumber);
  parse->add_flag("--with-types", opt.with_types, "annotate lexical constants");
  parse->add_option("--format", opt.format, "text|json");

  CLI::App* batch = app.add_subcommand("batch", "run the parse pipeline over a directory");
  batch->add_option("--input", opt.input, "directory of sequent .txt files")->required();
  batch->add_option("--out-dir", opt.out_dir, "write one JSON file per input");
  batch->add_flag("--random", opt.random_scores, "draw random scores");
  batch->add_option("--seed", opt.seed, "base seed, mixed with each file name");
  batch->add_option("--iterations", opt.iterations, "sinkhorn iterations (default 5)")
      ->check(CLI::PositiveNumber);
  batch->add_option("--jobs", opt.jobs, "worker threads (default: hardware)");

  CLI11_PARSE(app, argc, argv);

  return run_guarded([&]() -> int {
    if (frame->parsed()) return cmd_frame(opt);
    if (flatten->parsed()) return cmd_flatten(opt);
    if (validate->parsed()) return cmd_validate_seq(opt);
    if (link->parsed()) return cmd_link(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (term->parsed()) return cmd_term(opt);
    if (depgraph->parsed()) return cmd_depgraph(opt);
    if (enumerate->parsed()) return cmd_enumerate(opt);
    if (parse->parsed()) return cmd_parse(opt);
    if (batch->parsed()) return cmd_batch(opt);
    return 1;
  });
}
