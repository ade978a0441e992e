#!/usr/bin/env python3
"""Writes the fixture corpus under fixtures/.

Everything is drawn from a seeded generator, so rerunning reproduces the
files exactly. Besides the pipeline inputs it writes fixtures/expected/,
values computed here from the generator's own ground truth (not by running
the pipeline): counts that do not depend on trained models, the papers
containing "lockdown", the precision-2 density grid and a few three-hop
organization -> location answers.
"""

import argparse
import hashlib
import json
import random
import re
import unicodedata
from collections import Counter, defaultdict
from pathlib import Path

DISCIPLINES = [
    "Mathematical Sciences", "Physical Sciences", "Chemical Sciences", "Earth Sciences",
    "Environmental Sciences", "Biological Sciences", "Agricultural and Veterinary Sciences",
    "Information and Computing Sciences", "Engineering", "Technology",
    "Medical and Health Sciences", "Built Environment and Design", "Education", "Economics",
    "Commerce, Management, Tourism and Services", "Studies in Human Society",
    "Psychology and Cognitive Sciences", "Law and Legal Studies",
    "Studies in Creative Arts and Writing", "Language, Communication and Culture",
    "History and Archaeology", "Philosophy and Religious Studies",
]

# discipline index -> (vocabulary, entity names)
FIELDS = {
    0: ("equation compartmental parameter estimation stochastic differential simulation "
        "bifurcation threshold analytic solution numerical scheme",
        ["SEIR model", "basic reproduction number", "branching process", "bayesian inference",
         "markov chain monte carlo", "herd immunity threshold", "serial interval",
         "agent based model", "renewal equation", "bootstrap confidence interval"]),
    4: ("air pollution emissions environmental quality nitrogen dioxide climate waste "
        "particulate urban monitoring satellite",
        ["nitrogen dioxide", "particulate matter", "carbon emissions", "wastewater surveillance",
         "air quality index", "aerosol transmission", "medical waste", "urban heat island",
         "ozone concentration", "noise pollution"]),
    5: ("protein genome sequence cell receptor viral replication antibody mutation lineage "
        "binding structure",
        ["spike protein", "ACE2 receptor", "neutralizing antibody", "viral load",
         "genome sequencing", "variant of concern", "cytokine storm", "T cell response",
         "phylogenetic analysis", "protease inhibitor"]),
    7: ("model data learning algorithm network prediction neural dataset classification "
        "software accuracy benchmark",
        ["transfer learning", "graph neural network", "chest x-ray classification",
         "contact tracing app", "knowledge graph", "natural language processing",
         "time series forecasting", "federated learning", "misinformation detection",
         "computer vision"]),
    10: ("patients clinical hospital mortality vaccine trial symptoms treatment infection "
         "cohort intensive care outcomes",
         ["remdesivir", "mechanical ventilation", "dexamethasone", "mRNA vaccine",
          "hydroxychloroquine", "long covid", "convalescent plasma", "case fatality rate",
          "intensive care unit", "vaccine hesitancy"]),
    12: ("students online learning school teachers remote university classes education "
         "curriculum assessment engagement",
         ["remote teaching", "school closure", "learning loss", "digital divide",
          "online assessment", "blended learning", "student engagement", "teacher workload",
          "higher education", "video lectures"]),
    13: ("economic market unemployment gdp recession fiscal stimulus supply demand trade "
         "prices households",
         ["fiscal stimulus", "supply chain disruption", "unemployment insurance",
          "stock market volatility", "small business closure", "global trade",
          "income inequality", "monetary policy", "consumer spending", "remote work"]),
    15: ("social community policy lockdown households inequality survey mobility public "
         "behaviour compliance government",
         ["social distancing", "stay at home order", "mask mandate", "community mobility",
          "public trust", "domestic violence", "essential workers", "migrant workers",
          "policy stringency", "social capital"]),
    16: ("anxiety depression stress mental wellbeing participants psychological loneliness "
         "coping resilience symptoms",
         ["mental health", "psychological distress", "burnout", "sleep quality",
          "health anxiety", "post traumatic stress", "social isolation",
          "emotional regulation", "resilience training", "screen time"]),
}

GAZETTEER = [
    ("Wuhan", 30.5928, 114.3055), ("Beijing", 39.9042, 116.4074), ("Shanghai", 31.2304, 121.4737),
    ("Hong Kong", 22.3193, 114.1694), ("Seoul", 37.5665, 126.9780), ("Tokyo", 35.6762, 139.6503),
    ("Singapore", 1.3521, 103.8198), ("Delhi", 28.7041, 77.1025), ("Mumbai", 19.0760, 72.8777),
    ("Tehran", 35.6892, 51.3890), ("Milan", 45.4642, 9.1900), ("Madrid", 40.4168, -3.7038),
    ("Paris", 48.8566, 2.3522), ("London", 51.5074, -0.1278), ("Berlin", 52.5200, 13.4050),
    ("Stockholm", 59.3293, 18.0686), ("New York", 40.7128, -74.0060), ("Seattle", 47.6062, -122.3321),
    ("Boston", 42.3601, -71.0589), ("Chicago", 41.8781, -87.6298), ("Toronto", 43.6532, -79.3832),
    ("Mexico City", 19.4326, -99.1332), ("Sao Paulo", -23.5505, -46.6333), ("Lima", -12.0464, -77.0428),
    ("Cape Town", -33.9249, 18.4241), ("Nairobi", -1.2921, 36.8219), ("Lagos", 6.5244, 3.3792),
    ("Cairo", 30.0444, 31.2357), ("Sydney", -33.8688, 151.2093), ("Auckland", -36.8485, 174.7633),
    ("Suva", -18.1248, 178.4501), ("Apia", -13.8333, -171.7500), ("Anchorage", 61.2181, -149.9003),
    ("Honolulu", 21.3069, -157.8583), ("Lombardy", 45.4791, 9.8452), ("Daegu", 35.8714, 128.6014),
]

ORGS = [
    "Wuhan University", "Peking University", "Fudan University Shanghai",
    "University of Hong Kong", "Seoul National University", "University of Tokyo",
    "National University of Singapore", "All India Institute of Medical Sciences Delhi",
    "Tehran University of Medical Sciences", "University of Milan", "Complutense University of Madrid",
    "Institut Pasteur Paris", "Imperial College London", "Charite Berlin", "Karolinska Institute Stockholm",
    "Columbia University New York", "University of Washington Seattle", "Boston University",
    "University of Chicago", "University of Toronto", "University of Sao Paulo",
    "University of Cape Town", "University of Nairobi", "University of Lagos", "Cairo University",
    "University of Sydney", "University of Auckland", "University of the South Pacific Suva",
    "Max Planck Institute", "Oxford Vaccine Group", "Santa Fe Institute", "Alan Turing Institute",
    "World Health Organization", "Chinese Center for Disease Control", "Kyoto University",
    "Yonsei University Seoul", "ETH Zurich", "Stanford University", "Harvard Medical School",
    "Tsinghua University Beijing",
]

JOURNALS = ["The Lancet", "Nature", "Science", "BMJ", "PLOS ONE", "Journal of Medical Virology",
            "Environmental Research", "Journal of Economic Perspectives", "Computers in Education",
            "Psychological Medicine", "Social Science and Medicine", "Epidemics",
            "Bioinformatics", "Cell", "Journal of Public Economics"]
CONFERENCES = ["Conference on Neural Information Processing", "ACM Conference on Health",
               "International Conference on Learning Analytics", "IEEE Healthcom",
               "Workshop on Computational Epidemiology"]
PREPRINT_SERVERS = ["medRxiv", "bioRxiv", "arXiv"]

FIRST = ["Wei", "Li", "Jun", "Min", "Hiroshi", "Yuki", "Ana", "Maria", "Jose", "Luis", "Sofia",
         "Lucas", "Emma", "Olivia", "Noah", "Liam", "Amir", "Sara", "Fatima", "Omar", "Priya",
         "Arjun", "Chen", "Ming", "Kofi", "Amara", "Lars", "Ingrid", "Pierre", "Claire", "Hans",
         "Greta", "Marco", "Giulia", "Ivan", "Olga", "David", "Rachel", "Daniel", "Grace"]
LAST = ["Zhang", "Wang", "Liu", "Chen", "Kim", "Park", "Tanaka", "Sato", "Garcia", "Lopez",
        "Martinez", "Silva", "Santos", "Smith", "Jones", "Brown", "Taylor", "Wilson", "Khan",
        "Ahmed", "Patel", "Sharma", "Singh", "Okafor", "Mensah", "Andersson", "Johansson",
        "Dubois", "Martin", "Muller", "Schmidt", "Rossi", "Bianchi", "Ivanov", "Petrov",
        "Cohen", "Levi", "Nguyen", "Tran", "Haddad"]
ACCENTED = {"Jose": "José", "Garcia": "García", "Lopez": "López", "Martinez": "Martínez",
            "Muller": "Müller", "Andersson": "Andérsson", "Sofia": "Sofía", "Dubois": "Dubóis"}

TOPICS = {0: "Forecasting", 4: "Air quality", 5: "Genomics", 7: "Digital tools",
          10: "Clinical outcomes", 12: "Remote learning", 13: "Economic impact",
          15: "Public policy", 16: "Mental health"}

GENERAL = ("the study results show evidence from data collected during the pandemic period "
           "we report findings across several regions and discuss implications").split()


def fold_key(s):
    s = unicodedata.normalize("NFKD", s)
    s = "".join(c for c in s if not unicodedata.combining(c)).casefold()
    out, pending = [], False
    for c in s:
        if c.isspace():
            pending = bool(out)
        elif c.isalnum():
            if pending:
                out.append(" ")
            pending = False
            out.append(c)
    return "".join(out)


def tokens(s):
    return re.findall(r"[a-z0-9]+", s.lower())


def place_matches(text):
    """Gazetteer entries found as whole-token runs, longest first, non-overlapping."""
    toks = tokens(text)
    entries = sorted(((tokens(n), n) for n, _, _ in GAZETTEER), key=lambda e: -len(e[0]))
    used = [False] * len(toks)
    found = []
    for i in range(len(toks)):
        for etoks, name in entries:
            j = i + len(etoks)
            if toks[i:j] == etoks and not any(used[i:j]):
                for k in range(i, j):
                    used[k] = True
                found.append((i, name))
                break
    return [n for _, n in sorted(found)]


BASE32 = "0123456789bcdefghjkmnpqrstuvwxyz"


def geohash(lat, lon, precision):
    lat_lo, lat_hi, lon_lo, lon_hi = -90.0, 90.0, -180.0, 180.0
    bits, even, out, ch = 0, True, [], 0
    while len(out) < precision:
        if even:
            mid = (lon_lo + lon_hi) / 2
            if lon >= mid:
                ch, lon_lo = ch * 2 + 1, mid
            else:
                ch, lon_hi = ch * 2, mid
        else:
            mid = (lat_lo + lat_hi) / 2
            if lat >= mid:
                ch, lat_lo = ch * 2 + 1, mid
            else:
                ch, lat_hi = ch * 2, mid
        even = not even
        bits += 1
        if bits == 5:
            out.append(BASE32[ch])
            bits, ch = 0, 0
    return "".join(out)


def esc(s):
    return s.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace("\r", "\\r")


class Generator:
    def __init__(self, seed, n_papers):
        self.rng = random.Random(seed)
        self.n_papers = n_papers
        self.fields = sorted(FIELDS)
        self.glossary = []  # (id, name, discipline, source, description)
        self.entity_by_name = {}
        self.by_field = defaultdict(list)

    # ---- glossary ----
    def make_glossary(self):
        r = self.rng
        n = 0
        for d in self.fields:
            vocab = FIELDS[d][0].split()
            for name in FIELDS[d][1]:
                n += 1
                eid = f"K{n:04d}"
                words = r.sample(vocab, 5)
                desc = (f"{name} is a concept in {DISCIPLINES[d].lower()}. "
                        f"Studies of {name} involve {words[0]}, {words[1]} and {words[2]}; "
                        f"{name} is often discussed with {words[3]} and {words[4]}.")
                source = r.choice(["glossary", "glossary", "discipline_kg", "wiki"])
                self.glossary.append((eid, name, d, source, desc))
                self.entity_by_name[name] = eid
                self.by_field[d].append((eid, name))
        # one name shared by two entries, as happens when glossaries are merged
        n += 1
        self.glossary.append((f"K{n:04d}", "mental health", 10, "wiki",
                              "mental health is also tracked as a clinical outcome in patients."))

    # ---- text ----
    def sentence(self, d, extra=None):
        r = self.rng
        vocab = FIELDS[d][0].split()
        words = r.sample(vocab, 4) + r.sample(GENERAL, 3)
        r.shuffle(words)
        if extra:
            words.insert(r.randrange(len(words) + 1), extra)
        s = " ".join(words)
        return s[0].upper() + s[1:] + "."

    def document(self, disciplines, entities, places):
        r = self.rng
        main = disciplines[0]
        sents = []
        for i in range(r.randint(4, 6)):
            d = disciplines[i % len(disciplines)]
            sents.append(self.sentence(d))
        for _, name in entities:
            i = r.randrange(len(sents))
            sents[i] = sents[i][:-1] + f" and {name}."
        for p in places:
            sents.insert(r.randrange(len(sents) + 1), f"Data were collected in {p}.")
        lead = entities[0][1] if entities else FIELDS[main][0].split()[0]
        where = f" in {places[0]}" if places and r.random() < 0.5 else ""
        title = r.choice(["Effects of", "Assessing", "On", "Understanding", "Modelling"]) + \
            f" {lead} and {r.choice(FIELDS[main][0].split())}{where}"
        return title, " ".join(sents)

    # ---- papers ----
    def make_people(self):
        r = self.rng
        names = set()
        while len(names) < 600:
            names.add((r.choice(FIRST), r.choice(LAST)))
        self.authors = sorted(names)
        self.home_org = {a: r.choice(ORGS) for a in self.authors}
        self.author_weight = {a: 1.0 for a in self.authors}

    def pick_authors(self, k):
        r = self.rng
        chosen = []
        pool = list(self.authors)
        weights = [self.author_weight[a] for a in pool]
        while len(chosen) < k:
            a = r.choices(pool, weights)[0]
            if a not in chosen:
                chosen.append(a)
        for a in chosen:
            self.author_weight[a] += 1.0
        return chosen

    def make_papers(self):
        r = self.rng
        self.papers = []
        seen = set()
        for n in range(self.n_papers):
            ds = [r.choice(self.fields)]
            if r.random() < 0.3:
                other = r.choice(self.fields)
                if other != ds[0]:
                    ds.append(other)
            ents = []
            for d in ds:
                ents += r.sample(self.by_field[d], r.randint(1, 2))
            places = r.sample([g[0] for g in GAZETTEER], r.choice([0, 1, 1, 2]))
            title, abstract = self.document(ds, ents, places)
            # records without a DOI are merged on title and year, so distinct
            # papers must not share a title
            base, k = title, 1
            while fold_key(title) in seen:
                k += 1
                title = f"{base}, part {k}"
            seen.add(fold_key(title))
            kind = r.choices(["article", "proceeding", "preprint"], [0.7, 0.15, 0.15])[0]
            if kind == "article":
                venue = r.choice(JOURNALS)
            elif kind == "proceeding":
                venue = r.choice(CONFERENCES)
            else:
                venue = r.choice(PREPRINT_SERVERS)
            year = r.choices([2019, 2020, 2021, 2022], [0.1, 0.4, 0.35, 0.15])[0]
            doi = f"10.5555/skg.{n:05d}" if r.random() < 0.85 else None
            self.papers.append({
                "n": n, "disciplines": ds, "entities": ents, "places": places,
                "title": title, "abstract": abstract, "type": kind, "venue": venue,
                "year": year, "doi": doi, "authors": self.pick_authors(r.randint(1, 5)),
            })

    def feeds_for(self, p):
        r = self.rng
        if p["type"] == "preprint":
            return ["preprint"] + (["cord19"] if r.random() < 0.3 else [])
        medical = any(d in (5, 10) for d in p["disciplines"])
        pool = ["acemap", "digsci"] + (["cord19"] if medical else [])
        k = r.choices([1, 2, 3], [0.55, 0.35, 0.1])[0]
        return sorted(r.sample(pool, min(k, len(pool))))

    def make_feeds(self):
        r = self.rng
        feeds = defaultdict(list)
        counters = Counter()
        prefix = {"acemap": "AM", "cord19": "cord-", "digsci": "ds", "preprint": "pp"}
        self.refs = {}  # paper n -> list of refs
        self.conflicts = 0
        for p in self.papers:
            sources = self.feeds_for(p)
            p["sources"] = sources
            refs = []
            years = [p["year"]] * len(sources)
            if p["doi"] and len(sources) == 3 and r.random() < 0.3:
                years[2] = p["year"] + 1  # outvoted by the other two
                self.conflicts += 1
            for i, src in enumerate(sources):
                counters[src] += 1
                ext = f"{prefix[src]}{counters[src]:04d}"
                refs.append(f"{src}:{ext}")
                authors = []
                for first, last in p["authors"]:
                    name = f"{first} {last}"
                    if i > 0 and r.random() < 0.5:
                        name = f"{ACCENTED.get(first, first)} {ACCENTED.get(last, last)}"
                    if i > 0 and r.random() < 0.2:
                        name = name.upper()
                    authors.append(name)
                doi = p["doi"]
                if doi and i > 0 and r.random() < 0.5:
                    doi = "https://doi.org/" + doi.upper()
                title = p["title"] if i == 0 or r.random() < 0.5 else p["title"].upper() + "."
                abstract = p["abstract"]
                if i > 0 and r.random() < 0.5:
                    abstract = abstract[: len(abstract) // 2]
                feeds[src].append({
                    "source": src, "id": ext, "doi": doi, "title": title, "abstract": abstract,
                    "year": years[i], "authors": authors,
                    "orgs": [self.home_org[a] for a in p["authors"]],
                    "venue": p["venue"], "type": p["type"],
                })
            if p["doi"]:
                refs.append("doi:" + p["doi"])
            self.refs[p["n"]] = refs
        return feeds

    def ref(self, p):
        return self.rng.choice(self.refs[p["n"]])


def write_lines(path, lines):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    ap.add_argument("--seed", type=int, default=20200311)
    ap.add_argument("--papers", type=int, default=480)
    args = ap.parse_args()
    out = Path(args.out)
    g = Generator(args.seed, args.papers)
    r = g.rng
    g.make_glossary()
    g.make_people()
    g.make_papers()
    feeds = g.make_feeds()

    # feeds, with a few malformed lines that ingest must reject and report
    bad = {
        "acemap": ['{"source": "acemap", "id": "AM9001", "title": ',
                   json.dumps({"source": "acemap", "id": "AM9002", "title": "", "year": 2020,
                               "type": "article"}),
                   json.dumps({"source": "acemap", "id": "AM9003", "title": "Too early", "year": 1850,
                               "type": "article"})],
        "digsci": [json.dumps({"source": "digsci", "id": "ds9001", "title": "Odd type", "year": 2020,
                               "type": "poster"})],
    }
    for src in ["acemap", "cord19", "digsci", "preprint"]:
        lines = [json.dumps(rec, ensure_ascii=False, sort_keys=True) for rec in feeds[src]]
        for i, b in enumerate(bad.get(src, [])):
            lines.insert(7 + 13 * i, b)
        write_lines(out / "feeds" / f"{src}.jsonl", lines)

    write_lines(out / "gazetteer.tsv",
                ["# name\tlat\tlon"] + [f"{n}\t{lat}\t{lon}" for n, lat, lon in GAZETTEER])
    write_lines(out / "glossary.tsv",
                ["# entity_id\tname\tdiscipline\tsource\tdescription"] +
                [f"{e}\t{esc(n)}\t{d}\t{s}\t{esc(desc)}" for e, n, d, s, desc in g.glossary])

    # labelled training documents, disjoint from the corpus
    train = []
    for i in range(400):
        ds = [r.choice(g.fields)]
        if r.random() < 0.25:
            other = r.choice(g.fields)
            if other != ds[0]:
                ds.append(other)
        ents = [r.choice(g.by_field[d]) for d in ds]
        title, abstract = g.document(ds, ents, [])
        train.append(f"T{i:04d}\t{','.join(map(str, sorted(ds)))}\t{esc(title)}\t{esc(abstract)}")
    train.insert(50, "T9999\t99\tBad label\tThis line has an out of range label.")
    write_lines(out / "training.tsv", train)

    # ranking annotations: mentioned entities are positives, unmentioned ones
    # from the same disciplines are negatives
    order = list(g.papers)
    r.shuffle(order)
    splits = {"round1": order[:120], "round2": order[120:200], "validation": order[200:300]}
    for name, papers in splits.items():
        lines = []
        for p in papers:
            ref = g.ref(p)
            mentioned = {e for e, _ in p["entities"]}
            for e in sorted(mentioned):
                lines.append(f"{ref}\t{e}\t1")
            pool = sorted({e for d in p["disciplines"] for e, _ in g.by_field[d]} - mentioned)
            for e in r.sample(pool, min(len(pool), 4)):
                lines.append(f"{ref}\t{e}\t0")
        if name == "round2":
            lines.append("acemap:AM9999\tK0001\t1")  # unknown paper, reported and skipped
        write_lines(out / "annotations" / f"{name}.tsv", lines)

    templates = {
        "is_A": ["{h} is a type of {t}", "{h} is a kind of {t}", "{h} is one form of {t}"],
        "impact": ["{h} reduces {t}", "{h} increased {t}", "{h} strongly affects {t}"],
        "related_to": ["{h} is associated with {t}", "{h} correlates with {t}", "{h} was linked to {t}"],
        "unknown": ["{h} and {t} were both discussed", "{h} appears near {t} in the text",
                    "besides {h} the authors list {t}"],
    }
    surface = {"is_A": "is a", "impact": "affects", "related_to": "associated with", "unknown": "and"}
    names = [n for _, n, _, _, _ in g.glossary[:-1]]

    def relation_sentence(label, h, t):
        s = r.choice(templates[label]).format(h=h, t=t)
        filler = " ".join(r.sample(GENERAL, 4))
        return f"In this work {s} according to {filler}."

    rel_lines = []
    for _ in range(360):
        label = r.choice(list(templates))
        h, t = r.sample(names, 2)
        rel_lines.append(f"{esc(h)}\t{surface[label]}\t{esc(t)}\t{label}\t{esc(relation_sentence(label, h, t))}")
    write_lines(out / "relation_annotations.tsv", rel_lines)

    triples = []
    for p in g.papers:
        ents = [n for _, n in p["entities"]]
        if len(ents) >= 2 and r.random() < 0.8:
            label = r.choice(list(templates))
            h, t = ents[0], ents[1]
            triples.append(f"{g.ref(p)}\t{esc(h)}\t{surface[label]}\t{esc(t)}\t{esc(relation_sentence(label, h, t))}")
        if r.random() < 0.15:
            h = ents[0]
            triples.append(f"{g.ref(p)}\t{esc(h)}\taffects\tthe patients\t"
                           f"{esc(relation_sentence('impact', h, 'the patients'))}")
    write_lines(out / "triples.tsv", triples)

    # citations: later papers cite earlier ones, preferring already cited ones
    by_year = sorted(g.papers, key=lambda p: (p["year"], p["n"]))
    cites = set()
    indegree = Counter()
    for i, p in enumerate(by_year):
        earlier = [q for q in by_year[:i] if q["year"] <= p["year"]]
        if not earlier:
            continue
        k = min(len(earlier), r.choice([0, 1, 2, 3, 4, 5, 6, 8]))
        weights = [1.0 + 2.0 * indegree[q["n"]] for q in earlier]
        chosen = set()
        while len(chosen) < k:
            chosen.add(r.choices(earlier, weights)[0]["n"])
        for q in sorted(chosen):
            cites.add((p["n"], q))
            indegree[q] += 1
    cite_lines = [f"{g.ref(g.papers[a])}\t{g.ref(g.papers[b])}" for a, b in sorted(cites)]
    cite_lines.append(f"{g.refs[0][0]}\t{g.refs[0][0]}")  # self-citation, ignored
    cite_lines.append("doi:10.5555/missing.1\tacemap:AM0001")  # unknown paper
    write_lines(out / "citations.tsv", cite_lines)

    topics = [f"{g.ref(p)}\t{TOPICS[p['disciplines'][0]]}" for p in g.papers]
    write_lines(out / "topics.tsv", topics)

    same_as = []
    for eid, name, _, _, _ in r.sample(g.glossary[:-1], 40):
        qid = f"wikidata:Q{r.randint(1000, 999999)}"
        same_as.append((eid, qid, name))
    same_as.sort()
    write_lines(out / "same_as.tsv",
                [f"{e}\t{q}\t{esc(n)}" for e, q, n in same_as] + ["K9999\twikidata:Q1\tnowhere"])

    sub = []
    for d in g.fields:
        ents = g.by_field[d]
        for child, parent in [(ents[1], ents[0]), (ents[2], ents[0])]:
            sub.append(f"knowledge\t{child[0]}\t{parent[0]}")
    sub += ["topic\tVaccines\tClinical outcomes", "topic\tClinical outcomes\tHealth research",
            "topic\tMental health\tHealth research", "discipline\t16\t10"]
    write_lines(out / "subclass_of.tsv", sub)

    config = {
        "seed": 42,
        "inputs": {
            "acemap": "feeds/acemap.jsonl", "cord19": "feeds/cord19.jsonl",
            "digsci": "feeds/digsci.jsonl", "preprint": "feeds/preprint.jsonl",
            "gazetteer": "gazetteer.tsv", "training": "training.tsv", "glossary": "glossary.tsv",
            "annotations": ["annotations/round1.tsv", "annotations/round2.tsv"],
            "validation": "annotations/validation.tsv",
            "relation_annotations": "relation_annotations.tsv", "triples": "triples.tsv",
            "citations": "citations.tsv", "same_as": "same_as.tsv",
            "subclass_of": "subclass_of.tsv", "topics": "topics.tsv",
        },
    }
    (out / "skg.json").write_text(json.dumps(config, indent=2) + "\n")

    # ---- expected values from ground truth ----
    exp = out / "expected"
    authors = {a for p in g.papers for a in p["authors"]}
    orgs = {g.home_org[a] for a in authors}
    org_places = {o: sorted(set(place_matches(o))) for o in orgs}
    mentions = {p["n"]: sorted(set(place_matches(p["title"] + "\n" + p["abstract"]))) for p in g.papers}
    places = {pl for m in mentions.values() for pl in m} | {pl for m in org_places.values() for pl in m}
    topic_nodes = {TOPICS[p["disciplines"][0]] for p in g.papers} | {
        "Vaccines", "Clinical outcomes", "Health research", "Mental health"}
    externals = {q for _, q, _ in same_as}
    counts = {
        "node\tpaper": len(g.papers),
        "node\tauthor": len(authors),
        "node\torganization": len(orgs),
        "node\tjournal": len({p["venue"] for p in g.papers if p["type"] == "article"}),
        "node\tconference": len({p["venue"] for p in g.papers if p["type"] == "proceeding"}),
        "node\tpreprint": len({p["venue"] for p in g.papers if p["type"] == "preprint"}),
        "node\tvenue": 0,
        "node\tdiscipline": len(DISCIPLINES),
        "node\ttopic": len(topic_nodes),
        "node\tknowledge": len(g.glossary) + len(externals),
        "node\tlocation": len(places),
        "node\tpapertable": 0,
        "node\tillustration": 0,
        "edge\tis_written_by": sum(len(p["authors"]) for p in g.papers),
        "edge\tis_published_in": len(g.papers),
        "edge\twork_in": len(authors),
        "edge\tmention_location": sum(len(m) for m in mentions.values()),
        "edge\tis_located_in": sum(len(m) for m in org_places.values()),
        "edge\tis_cited_by": len(cites),
        "edge\tin_the_topic_of": len(g.papers),
        "edge\tsameAs": len(same_as),
        "edge\tsubClassOf": len(sub),
        "edge\thas_papertable": 0,
        "edge\thas_illustration": 0,
    }
    write_lines(exp / "kg_counts.tsv", [f"{k}\t{v}" for k, v in counts.items()])

    fusion = [f"{src}\t{len(feeds[src])}" for src in ["acemap", "cord19", "digsci", "preprint"]]
    fusion += [f"rejected\t{sum(len(b) for b in bad.values())}", f"fused\t{len(g.papers)}",
               f"authors\t{len(authors)}", f"conflicts\t{g.conflicts}"]
    write_lines(exp / "fusion.tsv", fusion)

    lockdown = [f"{g.refs[p['n']][0]}\t{p['year']}" for p in g.papers
                if "lockdown" in (p["title"] + "\n" + p["abstract"]).lower()]
    write_lines(exp / "search_lockdown.tsv", lockdown)

    coords = {n: (lat, lon) for n, lat, lon in GAZETTEER}
    density = Counter(geohash(*coords[pl], 2) for m in mentions.values() for pl in m)
    write_lines(exp / "density_p2.tsv", [f"{h}\t{c}" for h, c in sorted(density.items())])

    # organization -> places studied by papers of its authors
    studied = defaultdict(set)
    for p in g.papers:
        for a in p["authors"]:
            studied[g.home_org[a]].update(mentions[p["n"]])
    picks = sorted(orgs)[:5]
    write_lines(exp / "three_hop.tsv", [f"{o}\t{','.join(sorted(studied[o]))}" for o in picks])

    digest = hashlib.sha256()
    for path in sorted(out.rglob("*")):
        if path.is_file() and path.name != "MANIFEST":
            digest.update(path.relative_to(out).as_posix().encode() + b"\0" + path.read_bytes())
    (out / "MANIFEST").write_text(f"seed {args.seed}\npapers {args.papers}\nsha256 {digest.hexdigest()}\n")
    print(f"wrote {out} ({len(g.papers)} papers)")


if __name__ == "__main__":
    main()
