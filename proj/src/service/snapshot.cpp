#include "skg/service/snapshot.hpp"

#include "skg/common/error.hpp"
#include "skg/common/hash.hpp"
#include "skg/common/io.hpp"
#include "skg/common/text.hpp"
#include "skg/kgstore/graph_log.hpp"
#include "skg/netsci/network.hpp"
#include "skg/service/pipeline.hpp"

namespace skg::service {

namespace fs = std::filesystem;

std::shared_ptr<const Snapshot> Snapshot::load(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("snapshot directory not found: " + dir.string());
  auto s = std::make_shared<Snapshot>();
  const fs::path manifest = dir / "manifest.txt";
  s->id = fs::exists(manifest) ? content_hash128(io::read_file(manifest)).substr(0, 16)
                               : fs::weakly_canonical(dir).filename().string();

  s->corpus = corpus::read_corpus(dir / "corpus");
  for (const auto& p : s->corpus.papers) s->folded_text.push_back(text::fold(p.title + "\n" + p.abstract));
  for (std::size_t i = 0; i < s->corpus.authors.size(); ++i) s->author_index[s->corpus.authors[i].id] = i;
  for (std::size_t i = 0; i < s->corpus.orgs.size(); ++i) s->org_index[s->corpus.orgs[i].id] = i;
  for (std::size_t i = 0; i < s->corpus.venues.size(); ++i) s->venue_index[s->corpus.venues[i].id] = i;

  s->disciplines = read_disciplines(dir / "classify" / "disciplines.tsv");
  s->geo = geo::GeoIndex(corpus::read_locations(dir / "corpus" / "locations.tsv"), s->corpus);
  s->graph = kg::load_graph(dir / "kg" / "graph.log");
  for (auto kind : netsci::all_network_kinds()) {
    const std::string name(netsci::to_string(kind));
    const fs::path p = dir / "netsci" / (name + ".json");
    if (fs::exists(p)) s->network_stats[name] = io::read_file(p);
  }
  return s;
}

}  // namespace skg::service
