// magc: command-line front end for the multiaspect graph toolkit.
//
// Exit codes: 0 success, 1 domain error (message on stderr names the failing
// contract), 2 usage error. Output is buffered so that nothing reaches stdout
// unless the command succeeds.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "magc/magc.hpp"

namespace {

using namespace magc;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Parse, "cannot write " + path.string());
  out << text;
}

Natural parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(Errc::Parse, "expected a non-negative decimal integer, got '" + text + "'");
  }
  return Natural(text);
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string render(const std::map<std::string, std::string>& report) {
  std::string out;
  for (const auto& [k, v] : report) out += k + "=" + v + "\n";
  return out;
}

struct IndexerOpts {
  bool family = false;
  std::uint64_t n0 = 1;

  void add(CLI::App* cmd) {
    cmd->add_flag("--family", family, "use the family-wide labeling");
    cmd->add_option("--n0", n0, "family initial aspect size")->check(CLI::PositiveNumber);
  }
  Indexer indexer() const { return family ? Indexer::family(n0) : Indexer::per_mag(); }
};

struct BitsOpts {
  std::string bits;
  std::string file;

  void add(CLI::App* cmd) {
    auto* b = cmd->add_option("--bits", bits, "bit string of 0/1 characters");
    auto* f = cmd->add_option("--bits-file", file, "file holding an ASCII 0/1 bit string");
    b->excludes(f);
  }
  BitString get() const { return BitString::parse(file.empty() ? bits : read_text(file)); }
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MAGC_SEED")) {
    return detail::parse_u64(env, "MAGC_SEED");
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiaspect graph indexing, encoding and analysis"};
  app.require_subcommand(1);
  std::ostringstream out;
  std::function<void()> run;

  // index -------------------------------------------------------------------
  struct {
    std::string tau, edge;
    bool family = false;
    std::size_t p = 1;
    std::uint64_t n0 = 1;
  } ix;
  auto* index = app.add_subcommand("index", "print the index of a composite edge (0 for a self-loop)");
  index->add_option("--tau", ix.tau, "companion tuple, e.g. 2,2");
  index->add_option("--edge", ix.edge, "edge, e.g. (1,2)-(2,1)")->required();
  index->add_flag("--family", ix.family, "family-wide labeling for order p and initial size n0");
  index->add_option("--p", ix.p, "family order")->check(CLI::PositiveNumber);
  index->add_option("--n0", ix.n0, "family initial aspect size")->check(CLI::PositiveNumber);
  index->callback([&] {
    run = [&] {
      const auto [u, v] = parse_edge_text(ix.edge);
      if (ix.family) {
        out << (u == v ? Natural(0) : family_edge_index(u, v, FamilySpec(ix.p, ix.n0))) << "\n";
        return;
      }
      if (ix.tau.empty()) throw CLI::RequiredError("--tau");
      const auto j = edge_index(u, v, parse_tau(ix.tau));
      out << (j ? *j : Natural(0)) << "\n";
    };
  });

  // edge --------------------------------------------------------------------
  struct {
    std::string tau, j;
    bool family = false;
    std::size_t p = 1;
    std::uint64_t n0 = 1;
  } ed;
  auto* edge = app.add_subcommand("edge", "print the composite edge with index j (<0> for j = 0)");
  edge->add_option("--tau", ed.tau, "companion tuple");
  edge->add_option("--j", ed.j, "edge index (decimal, any size)")->required();
  edge->add_flag("--family", ed.family, "family-wide labeling");
  edge->add_option("--p", ed.p, "family order")->check(CLI::PositiveNumber);
  edge->add_option("--n0", ed.n0, "family initial aspect size")->check(CLI::PositiveNumber);
  edge->callback([&] {
    run = [&] {
      const Natural j = parse_natural(ed.j);
      std::optional<CompositeEdge> e;
      if (ed.family) {
        e = family_index_edge(j, FamilySpec(ed.p, ed.n0));
      } else {
        if (ed.tau.empty()) throw CLI::RequiredError("--tau");
        e = index_edge(j, parse_tau(ed.tau));
      }
      out << (e ? e->str() : std::string("<0>")) << "\n";
    };
  });

  // encode / decode ---------------------------------------------------------
  std::string encode_mag;
  IndexerOpts encode_ix;
  auto* encode = app.add_subcommand("encode", "MagFile -> characteristic string");
  encode->add_option("--mag", encode_mag, "MagFile path")->required();
  encode_ix.add(encode);
  encode->callback([&] {
    run = [&] { out << mag_to_char_string(read_mag_file(read_text(encode_mag)), encode_ix.indexer()).str() << "\n"; };
  });

  std::string decode_tau;
  BitsOpts decode_bits;
  IndexerOpts decode_ix;
  auto* decode = app.add_subcommand("decode", "characteristic string -> MagFile");
  decode->add_option("--tau", decode_tau, "companion tuple")->required();
  decode_bits.add(decode);
  decode_ix.add(decode);
  decode->callback([&] {
    run = [&] { out << write_mag_file(detail::mag_from_bits(decode_bits.get(), parse_tau(decode_tau), decode_ix.indexer())); };
  });

  // edgestring --------------------------------------------------------------
  auto* edgestring = app.add_subcommand("edgestring", "edge-set string encode/decode");
  edgestring->require_subcommand(1);
  std::string es_mag;
  IndexerOpts es_enc_ix;
  auto* es_encode = edgestring->add_subcommand("encode", "MagFile -> <E>");
  es_encode->add_option("--mag", es_mag, "MagFile path")->required();
  es_enc_ix.add(es_encode);
  es_encode->callback([&] {
    run = [&] { out << encode_edge_set_string(read_mag_file(read_text(es_mag)), es_enc_ix.indexer()).str() << "\n"; };
  });
  BitsOpts es_bits;
  IndexerOpts es_dec_ix;
  auto* es_decode = edgestring->add_subcommand("decode", "<E> -> MagFile");
  es_bits.add(es_decode);
  es_dec_ix.add(es_decode);
  es_decode->callback([&] {
    run = [&] { out << write_mag_file(decode_edge_set_string(es_bits.get(), es_dec_ix.indexer())); };
  });

  // iso ---------------------------------------------------------------------
  auto* iso = app.add_subcommand("iso", "MagFile <-> graph file");
  iso->require_subcommand(1);
  std::string iso_mag;
  auto* to_graph = iso->add_subcommand("to-graph", "MagFile -> graph file");
  to_graph->add_option("--mag", iso_mag, "MagFile path")->required();
  to_graph->callback([&] { run = [&] { out << write_graph_file(mag_to_graph(read_mag_file(read_text(iso_mag)))); }; });
  std::string iso_graph, iso_tau;
  auto* to_mag = iso->add_subcommand("to-mag", "graph file -> MagFile");
  to_mag->add_option("--graph", iso_graph, "graph file path")->required();
  to_mag->add_option("--tau", iso_tau, "companion tuple with N matching n")->required();
  to_mag->callback([&] {
    run = [&] { out << write_mag_file(graph_to_mag(read_graph_file(read_text(iso_graph)), parse_tau(iso_tau))); };
  });

  // grow --------------------------------------------------------------------
  struct {
    std::string source = "seed", file, pattern, out_dir;
    std::optional<std::uint64_t> seed;
    std::size_t p = 1;
    std::uint64_t n0 = 1, s_max = 1;
  } gr;
  auto* grow = app.add_subcommand("grow", "bit source -> nesting family");
  grow->add_option("--source", gr.source, "seed | file | pattern")
      ->check(CLI::IsMember({"seed", "file", "pattern"}));
  grow->add_option("--seed", gr.seed, "seed for --source seed (default MAGC_SEED or 1)");
  grow->add_option("--file", gr.file, "bit file for --source file");
  grow->add_option("--pattern", gr.pattern, "repeated bits for --source pattern");
  grow->add_option("--p", gr.p, "family order")->required()->check(CLI::PositiveNumber);
  grow->add_option("--n0", gr.n0, "initial aspect size")->required()->check(CLI::PositiveNumber);
  grow->add_option("--s-max", gr.s_max, "largest aspect size")->required()->check(CLI::PositiveNumber);
  grow->add_option("--out", gr.out_dir, "directory for member files and manifest");
  grow->callback([&] {
    run = [&] {
      BitSource source = gr.source == "file"      ? BitSource::from_file(gr.file)
                         : gr.source == "pattern" ? BitSource::pattern(gr.pattern)
                                                  : BitSource::seeded(gr.seed.value_or(default_seed()));
      const FamilySpec spec(gr.p, gr.n0);
      const NestingFamily family = grow_family(source, spec, gr.s_max);
      std::string manifest = "familyv1\nsource=" + family.source_id + "\np=" + std::to_string(spec.p) +
                             "\nn0=" + std::to_string(spec.n0) + "\ns_max=" + std::to_string(family.s_max) + "\n";
      for (Coord s = spec.n0; s <= family.s_max; ++s) manifest += "member=" + std::to_string(s) + ".mag\n";
      if (gr.out_dir.empty()) {
        out << manifest;
        for (Coord s = spec.n0; s <= family.s_max; ++s) {
          out << "# member " << s << "\n" << write_mag_file(family.member(s));
        }
        return;
      }
      const std::filesystem::path dir(gr.out_dir);
      std::filesystem::create_directories(dir);
      for (Coord s = spec.n0; s <= family.s_max; ++s) {
        write_text(dir / (std::to_string(s) + ".mag"), write_mag_file(family.member(s)));
      }
      write_text(dir / "manifest.txt", manifest);
      out << manifest;
    };
  });

  // analyze -----------------------------------------------------------------
  std::string an_mag;
  TopologyParams an_params;
  std::optional<std::size_t> an_k;
  auto* analyze = app.add_subcommand("analyze", "topology report of a MagFile");
  analyze->add_option("--mag", an_mag, "MagFile path")->required();
  analyze->add_option("--c", an_params.c, "degree deviation constant");
  analyze->add_option("--delta", an_params.delta, "randomness deficiency");
  analyze->add_option("--k", an_k, "star property k (default ceil((lg N)^2))");
  analyze->add_option("--limit", an_params.automorphism_limit, "largest N for the automorphism search");
  analyze->callback([&] {
    run = [&] {
      const Mag g = read_mag_file(read_text(an_mag));
      an_params.star_k = an_k;
      const TopologyReport r = topology_report(g, an_params);
      std::map<std::string, std::string> rep;
      rep["tau"] = g.tau().str();
      rep["vertices"] = std::to_string(r.n_vertices);
      rep["edges"] = std::to_string(r.edge_count);
      rep["degree_max_deviation"] = fixed(r.degrees.max_deviation);
      rep["degree_bound"] = fixed(r.degrees.bound);
      rep["degree_within_bound"] = r.degrees.within_bound ? "true" : "false";
      rep["diameter"] = r.diameter ? std::to_string(*r.diameter) : "disconnected";
      rep["two_path_min"] = std::to_string(r.two_paths.min);
      rep["two_path_max"] = std::to_string(r.two_paths.max);
      rep["star_k"] = std::to_string(r.star_k);
      rep["star_holds"] = r.star.holds ? "true" : "false";
      if (r.star.counterexample) {
        const auto [u, v] = *r.star.counterexample;
        rep["star_counterexample"] =
            rank_vertex(u + 1, g.tau()).str() + "," + rank_vertex(v + 1, g.tau()).str();
      }
      rep["rigid"] = r.rigid ? (*r.rigid ? "true" : "false") : "skipped";
      if (r.witness_automorphism) {
        std::string img;
        for (std::size_t i = 0; i < r.witness_automorphism->image.size(); ++i) {
          img += (i ? " " : "") + std::to_string(r.witness_automorphism->image[i] + 1);
        }
        rep["automorphism_ranks"] = img;
      }
      out << render(rep);
    };
  });

  // estimate ----------------------------------------------------------------
  std::string est_mag;
  IndexerOpts est_ix;
  std::size_t est_slack = 64;
  auto* estimate = app.add_subcommand("estimate", "compression upper-bound estimates for a MagFile");
  estimate->add_option("--mag", est_mag, "MagFile path")->required();
  est_ix.add(estimate);
  estimate->add_option("--slack", est_slack, "slack added to the <tau> estimate before flagging");
  estimate->callback([&] {
    run = [&] {
      const InformationReport r = information_report(read_mag_file(read_text(est_mag)), est_ix.indexer(), est_slack);
      std::map<std::string, std::string> rep;
      rep["estimate_kind"] = "compression upper bound, not K";
      rep["indexer"] = r.indexer;
      rep["x_length"] = std::to_string(r.x_bits);
      rep["edgeset_length"] = std::to_string(r.edge_set_bits);
      rep["tau_length"] = std::to_string(r.tau_bits);
      rep["length_gap"] = std::to_string(r.length_gap);
      rep["x_upper_bound_estimate"] = std::to_string(r.k_x.bits);
      rep["x_upper_bound_estimate_adapter"] = r.k_x.adapter;
      rep["edgeset_upper_bound_estimate"] = std::to_string(r.k_edge_set.bits);
      rep["edgeset_upper_bound_estimate_adapter"] = r.k_edge_set.adapter;
      rep["tau_upper_bound_estimate"] = std::to_string(r.k_tau.bits);
      rep["tau_upper_bound_estimate_adapter"] = r.k_tau.adapter;
      rep["estimate_gap"] = std::to_string(r.estimate_gap);
      rep["estimate_gap_threshold"] = std::to_string(r.gap_threshold);
      rep["estimate_gap_flagged"] = r.flagged ? "true" : "false";
      out << render(rep);
    };
  });

  // t35-build / t35-recover --------------------------------------------------
  BitsOpts tb_bits;
  std::size_t tb_extra = 0;
  std::optional<std::uint64_t> tb_seed;
  bool tb_edgestring = false;
  auto* t35_build = app.add_subcommand("t35-build", "bits -> bit-driven tau and a witness-complete MagFile");
  tb_bits.add(t35_build);
  t35_build->add_option("--extra", tb_extra, "number of additional random edges");
  t35_build->add_option("--seed", tb_seed, "seed for the additional edges (default MAGC_SEED or 1)");
  t35_build->add_flag("--edgestring", tb_edgestring, "print <E> instead of a MagFile");
  t35_build->callback([&] {
    run = [&] {
      const BitString bits = tb_bits.get();
      const CompanionTuple tau = build_bitdriven_tau(bits);
      // Witnesses: the all-ones vertex joined to each unit step along a
      // size-2 aspect.
      std::vector<RawEdge> raw;
      const CompositeVertex base(std::vector<Coord>(tau.order(), 1));
      for (std::size_t i = 0; i < tau.order(); ++i) {
        if (tau.size(i) < 2) continue;
        CompositeVertex w = base;
        w.coords[i] = 2;
        raw.emplace_back(base, w);
      }
      const std::uint64_t n = to_u64(tau.num_vertices(), "vertex count");
      if (tb_extra > 0 && n >= 2) {
        CounterRng rng(tb_seed.value_or(default_seed()));
        for (std::size_t k = 0; k < tb_extra; ++k) {
          const std::uint64_t a = rng.below(n) + 1;
          std::uint64_t b = rng.below(n - 1) + 1;
          if (b >= a) ++b;
          raw.emplace_back(rank_vertex(a, tau), rank_vertex(b, tau));
        }
      }
      const Mag g = validate_mag(tau, std::span<const RawEdge>(raw));
      if (tb_edgestring) {
        write_edge_set_string(g, Indexer::per_mag(), [&](bool b) { out.put(b ? '1' : '0'); });
        out << "\n";
      } else {
        out << write_mag_file(g);
      }
    };
  });

  std::string tr_mag, tr_expect;
  BitsOpts tr_bits;
  auto* t35_recover = app.add_subcommand("t35-recover", "recover driving bits from a MagFile or <E>");
  auto* tr_mag_opt = t35_recover->add_option("--mag", tr_mag, "MagFile path");
  tr_bits.add(t35_recover);
  t35_recover->add_option("--expect", tr_expect, "fail unless recovery is complete and equals these bits");
  t35_recover->callback([&] {
    run = [&] {
      BitRecovery r;
      if (*tr_mag_opt) {
        r = recover_bits_streaming(read_mag_file(read_text(tr_mag)));
      } else if (!tr_bits.bits.empty() || !tr_bits.file.empty()) {
        r = recover_bits(tr_bits.get());
      } else {
        throw CLI::RequiredError("--mag or --bits/--bits-file");
      }
      if (!tr_expect.empty()) check_recovery(r, BitString::parse(tr_expect));
      std::string unwitnessed;
      for (std::size_t i = 0; i < r.unwitnessed.size(); ++i) {
        unwitnessed += (i ? "," : "") + std::to_string(r.unwitnessed[i]);
      }
      out << "bits=" << r.bits.str() << "\n";
      out << "unwitnessed=" << (unwitnessed.empty() ? "none" : unwitnessed) << "\n";
    };
  });

  // rand --------------------------------------------------------------------
  std::string rd_tau;
  std::optional<std::uint64_t> rd_seed;
  double rd_density = 0.5;
  auto* rnd = app.add_subcommand("rand", "seeded random MagFile");
  rnd->add_option("--tau", rd_tau, "companion tuple")->required();
  rnd->add_option("--seed", rd_seed, "seed (default MAGC_SEED or 1)");
  rnd->add_option("--density", rd_density, "edge probability")->check(CLI::Range(0.0, 1.0));
  rnd->callback([&] {
    run = [&] { out << write_mag_file(random_mag(parse_tau(rd_tau), rd_seed.value_or(default_seed()), rd_density)); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    run();
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << out.str();
  return 0;
}
