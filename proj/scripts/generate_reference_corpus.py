#!/usr/bin/env python3
"""Regenerates the bundled reference corpus.

The repository ships a synthetic stand-in corpus in the interlinear EVA
transcription format, plus the matching page-metadata CSV. The page
roster, hand/language/subject/quire structure, and exclusion-relevant
pages mirror the documented structure of the Voynich Manuscript, and the
word distributions plant recoverable language/subject signal so the
end-to-end pipeline and its statistical checks can run self-contained.
Swap in the real Takahashi transcription with data/fetch_upstream.sh for
analyses of the actual manuscript.

Deterministic: a fixed seed reproduces both files byte-for-byte.
"""

import random
from pathlib import Path

SEED = 20240817
OUT_DIR = Path(__file__).resolve().parent.parent / "data"

PREFIXES = ["qo", "o", "d", "ch", "sh", "k", "t", "y", "ol", "da", "so", "cth", "ck"]
MIDS = ["ke", "che", "she", "ai", "a", "o", "e", "ee", "ii", "eo", "ka", "te", ""]
SUFFIXES = ["dy", "y", "in", "iin", "l", "r", "m", "s", "ey", "edy", "ol", "or", "al", "ar", "am"]


def make_words(rng, count, taken):
    words = []
    while len(words) < count:
        w = rng.choice(PREFIXES) + rng.choice(MIDS) + rng.choice(SUFFIXES)
        if rng.random() < 0.3:
            w = rng.choice(PREFIXES) + rng.choice(MIDS) + rng.choice(MIDS) + rng.choice(SUFFIXES)
        if len(w) < 3 or w in taken:
            continue
        taken.add(w)
        words.append(w)
    return words


def zipf_choice(rng, words, exponent=1.0):
    weights = [1.0 / (i + 1) ** exponent for i in range(len(words))]
    return rng.choices(words, weights=weights, k=1)[0]


def build_pools(rng):
    taken = set()
    pools = {
        "shared": make_words(rng, 60, taken),
        "lang_A": make_words(rng, 150, taken),
        "lang_B": make_words(rng, 150, taken),
        "bath_cluster": make_words(rng, 60, taken),  # balneological/starred/rosette overlap
    }
    for subject in ["botanical", "astrological", "balneological", "pharmaceutical",
                    "recipes", "starred", "rosette", "unknown"]:
        pools["subj_" + subject] = make_words(rng, 120, taken)
    return pools


def page_roster():
    """(page, hand, language, subject, quire) in manuscript order."""
    rows = []

    def quire(folio):
        return min(18, 1 + (folio - 1) * 18 // 116)

    def add(page, folio, hand, lang, subject):
        rows.append((page, hand, lang, subject, quire(folio)))

    for f in range(1, 36):           # botanical, hand 1, language A
        add(f"f{f}r", f, 1, "A", "botanical")
        add(f"f{f}v", f, 1, "A", "botanical")
    for f in range(36, 49):          # botanical, hand 2, language B
        add(f"f{f}r", f, 2, "B", "botanical")
        add(f"f{f}v", f, 2, "B", "botanical")
    for f in range(49, 57):          # botanical, hand 3, language B
        add(f"f{f}r", f, 3, "B", "botanical")
        add(f"f{f}v", f, 3, "B", "botanical")

    add("f57r", 57, 1, "A", "botanical")
    add("f57v", 57, 1, "unknown", "unknown")   # Currier language unassigned
    add("f58r", 58, 1, "A", "unknown")         # text-only pages
    add("f58v", 58, 1, "A", "unknown")

    for f in range(59, 65):          # pharmaceutical, hand 5, language A
        add(f"f{f}r", f, 5, "A", "pharmaceutical")
        add(f"f{f}v", f, 5, "A", "pharmaceutical")
    add("f65r", 65, 2, "B", "botanical")       # short page
    add("f65v", 65, 2, "B", "botanical")       # short page
    add("f66r", 66, 2, "B", "botanical")
    add("f66v", 66, 2, "B", "botanical")

    astro_pages = ["f67r1", "f67r2", "f67v1", "f67v2", "f68r1", "f68r2", "f68r3",
                   "f68v1", "f68v2", "f69r", "f69v", "f70r1", "f70r2", "f70v1", "f70v2",
                   "f71r", "f71v", "f72r1", "f72r2", "f72r3", "f72v1", "f72v2", "f72v3",
                   "f73r", "f73v"]
    for page in astro_pages:         # astrological, hand 4, language A
        folio = int("".join(ch for ch in page[1:4] if ch.isdigit()))
        add(page, folio, 4, "A", "astrological")

    for f in range(75, 85):          # balneological, hand 2, language B
        add(f"f{f}r", f, 2, "B", "balneological")
        add(f"f{f}v", f, 2, "B", "balneological")
    for page, f in [("f85r", 85), ("f85v", 85), ("f86r", 86), ("f86v", 86)]:
        add(page, f, 3, "B", "rosette")
    for f in range(87, 90):          # pharmaceutical, hand 5, language A
        add(f"f{f}r", f, 5, "A", "pharmaceutical")
        add(f"f{f}v", f, 5, "A", "pharmaceutical")
    add("f90r1", 90, 1, "A", "botanical")
    add("f90r2", 90, 1, "A", "botanical")      # short page
    add("f90v", 90, 1, "A", "botanical")

    for f in range(103, 109):        # starred, hand 3, language B
        add(f"f{f}r", f, 3, "B", "starred")
        add(f"f{f}v", f, 3, "B", "starred")
    for f in range(109, 117):        # recipes, hand 1, language B
        add(f"f{f}r", f, 1, "B", "recipes")
        add(f"f{f}v", f, 1, "B", "recipes")
    return rows


SHORT_PAGES = {"f5v", "f11v", "f25r", "f38r", "f65r", "f65v", "f90r2"}

TOKEN_RANGES = {
    "botanical": (95, 150),
    "astrological": (55, 90),
    "balneological": (180, 260),
    "pharmaceutical": (110, 170),
    "recipes": (230, 330),
    "starred": (250, 350),
    "rosette": (160, 220),
    "unknown": (120, 160),
}


def sample_token(rng, pools, lang, subject):
    if subject == "astrological":
        mix = [("shared", 0.50), ("lang", 0.15), ("subject", 0.35)]
    elif subject in ("balneological", "starred", "rosette"):
        mix = [("shared", 0.55), ("lang", 0.20), ("cluster", 0.15), ("subject", 0.10)]
    else:
        mix = [("shared", 0.55), ("lang", 0.20), ("subject", 0.25)]
    r = rng.random()
    acc = 0.0
    bucket = mix[-1][0]
    for name, p in mix:
        acc += p
        if r < acc:
            bucket = name
            break
    if bucket == "shared":
        return zipf_choice(rng, pools["shared"], 1.05)
    if bucket == "lang":
        pool = pools["lang_A"] if lang == "A" else pools["lang_B"]
        if lang == "unknown":
            pool = pools["lang_A"] + pools["lang_B"]
        return zipf_choice(rng, pool, 0.8)
    if bucket == "cluster":
        return zipf_choice(rng, pools["bath_cluster"], 0.8)
    return zipf_choice(rng, pools["subj_" + subject], 0.8)


def emit_page(rng, pools, page, lang, subject):
    lo, hi = TOKEN_RANGES[subject]
    n = rng.randint(lo, hi)
    if page in SHORT_PAGES:
        n = rng.randint(28, 45)
    tokens = [sample_token(rng, pools, lang, subject) for _ in range(n)]

    lines = []
    locus_major = 1
    locus_minor = 1
    i = 0
    line_in_par = 0
    while i < n:
        width = rng.randint(6, 10)
        chunk = tokens[i:i + width]
        i += width
        line_in_par += 1
        # occasional transcription annotations
        decorated = []
        for w in chunk:
            if rng.random() < 0.02:
                mid = rng.randrange(1, len(w))
                w = w[:mid] + "!" + w[mid:]
            decorated.append(w)
        sep = "-" if rng.random() < 0.04 else "."
        text = sep.join(decorated)
        if rng.random() < 0.05:
            text = "{" + rng.choice(["plant", "gap", "figure", "star"]) + "}" + text
        end_paragraph = (line_in_par >= rng.randint(3, 5)) or i >= n
        if end_paragraph:
            text += "="
        lines.append(f"<{page}.P{locus_major}.{locus_minor};H> {text}")
        if rng.random() < 0.06:
            # a second transcriber's reading of the same locus
            lines.append(f"<{page}.P{locus_major}.{locus_minor};U> {text.replace('!', '')}")
        if end_paragraph:
            locus_major += 1
            locus_minor = 1
            line_in_par = 0
        else:
            locus_minor += 1
    return lines


def main():
    rng = random.Random(SEED)
    pools = build_pools(rng)
    roster = page_roster()

    lines = [
        "# Reference interlinear transcription (synthetic stand-in corpus).",
        "# Format: <page.locus;transcriber> text  —  '#' lines are comments.",
        "# Regenerate with scripts/generate_reference_corpus.py; replace with the",
        "# real Takahashi transcription via data/fetch_upstream.sh.",
    ]
    for page, hand, lang, subject, q in roster:
        del hand, q
        lines.append(f"# page {page}")
        lines.extend(emit_page(rng, pools, page, lang, subject))

    OUT_DIR.mkdir(exist_ok=True)
    (OUT_DIR / "reference_transcription.evt").write_text("\n".join(lines) + "\n")

    meta = ["page,hand,language,subject,quire"]
    for page, hand, lang, subject, q in roster:
        meta.append(f"{page},{hand},{lang},{subject},{q}")
    (OUT_DIR / "reference_metadata.csv").write_text("\n".join(meta) + "\n")

    total = sum(1 for _ in roster)
    print(f"{total} pages written to {OUT_DIR}")


if __name__ == "__main__":
    main()
