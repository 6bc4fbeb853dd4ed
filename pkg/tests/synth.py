"""Seeded generator of synthetic requirement-like corpora.

Sentences mix closed-class words from the builtin lexicons with filler nouns,
verbs, numbers, identifiers and punctuation, so that every context rule and
most tokenizer branches get exercised.
"""

import random
from importlib import resources

FILLERS = {
    "fr": dict(
        nouns="paquet valeur champ mode satellite ordre bord table liste canal fichier délai "
              "générateur paramètre sortie entrée mémoire capteur télécommande plate-forme".split(),
        proper="TCH BDS LVC NORM MAN Pleiades CNES OPS_DELAI_INTER_FIN_LEC A1 v2".split(),
        verbs="est sera doit peut vérifiera validera traiteront calcule gère donne respecte "
              "contient permet utilise faut agit suffit enverrons rejettera a ré-initialise".split(),
        adjectives="utile nécessaire possible actif valide grand souvent peu maximum".split(),
        negation="ne pas plus jamais".split(),
        ordering="puis ensuite alors sinon selon".split(),
        hyphen="peut-il a-t-il 2-3 sous-système auto-détecte".split(),
        # words at the edge of the future-tense suffix rule
        edge="ira ra era tra rons ront".split(),
        phrases=["il ne sera pas utile", "Il n'est jamais nécessaire de", "il ne pas plus faut",
                 "il n' est pas ne possible", "il y a", "ils s'agit", "il s’agit", "il est possible",
                 "si grand", "si souvent", "vérifiera que", "le paquet que", "il le donne",
                 "ne la utilise", "l'utilise", "s'il", "s’ils", "qu'il", "il y aura",
                 "elle en gère", "on y sera", "la valeur qui"],
    ),
    "en": dict(
        nouns="packet value field mode satellite order board table list channel file delay "
              "generator parameter output input memory sensor command".split(),
        proper="TCH BDS LVC NORM MAN Pleiades OPS_DELAY A1 v2".split(),
        verbs="is are be shall will must checks sends uses provides contains rejects was seems appears".split(),
        adjectives="necessary possible useful active valid maximum".split(),
        negation="not never also".split(),
        ordering="then otherwise".split(),
        hyphen="read-only 2-3 sub-system self-test".split(),
        edge="it's that's".split(),
        phrases=["it is necessary", "it is not possible", "it will not be useful", "it seems",
                 "checks that the", "the value that", "that is", "this packet", "those are",
                 "that packet", "that which", "it must also be possible"],
    ),
}
NUMBERS = "0 1 12 255 3.5 2,5 1.000".split()
PUNCT = list(",,,;:()«»\"") + ["..."]


def lexicon_words(language):
    """Entry surfaces from the shipped lexicon file, read as plain text."""
    text = resources.files("reqlint").joinpath(f"data/lexicon_{language}.tsv").read_text("utf-8")
    words = []
    section = "entries"
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            section = line[1:-1]
            continue
        if section == "entries":
            w = line.split("\t")[0]
            if w not in words:
                words.append(w)
    return words


class Generator:
    """*open_share* > 0 replaces that share of draws with open-class words,
    bringing closed-class density down to what running text shows."""

    def __init__(self, seed, language="fr", open_share=0.0):
        self.rng = random.Random(seed)
        self.open_share = open_share
        self.language = language
        pools = FILLERS[language]
        self.lex = lexicon_words(language)
        self.elided = [w for w in self.lex if w.endswith("'")]
        self.closed = [w for w in self.lex if not w.endswith("'")]
        self.pools = pools
        self.letter_words = pools["nouns"] + pools["verbs"] + pools["adjectives"] + self.closed

    def word(self):
        r = self.rng.random()
        p = self.pools
        if self.open_share and self.rng.random() < self.open_share:
            pool = self.rng.choice((p["nouns"], p["nouns"], p["verbs"], p["adjectives"], p["proper"], NUMBERS))
            return self.rng.choice(pool)
        if r < 0.30:
            return self.rng.choice(self.closed)
        if r < 0.42 and self.elided:
            host = self.rng.choice(self.letter_words).split("-")[0]
            apo = self.rng.choice("'''’")
            return self.rng.choice(self.elided)[:-1] + apo + host
        if r < 0.58:
            return self.rng.choice(p["nouns"])
        if r < 0.70:
            return self.rng.choice(p["verbs"])
        if r < 0.76:
            return self.rng.choice(p["adjectives"])
        if r < 0.80:
            return self.rng.choice(p["negation"])
        if r < 0.83:
            return self.rng.choice(p["ordering"])
        if r < 0.86:
            return self.rng.choice(p["hyphen"])
        if r < 0.875:
            return self.rng.choice(p["edge"])
        if r < 0.90:
            return self.rng.choice(p["phrases"])
        if r < 0.92:
            return self.rng.choice(p["proper"])
        if r < 0.95:
            return self.rng.choice(NUMBERS)
        if r < 0.97 and self.language == "en":
            return self.rng.choice(p["nouns"]) + self.rng.choice(("'s", "’s"))
        return self.rng.choice(PUNCT)

    def sentence(self, max_words=40):
        rng = self.rng
        n = rng.randint(1, max_words)
        parts = []
        for _ in range(n):
            w = self.word()
            if w == "," and parts:
                parts[-1] += ","  # attached comma
            else:
                parts.append(w)
            if rng.random() < 0.03:
                parts[-1] = parts[-1].capitalize()
        if rng.random() < 0.7 and parts[0][:1].isalpha():
            parts[0] = parts[0][:1].upper() + parts[0][1:]
        text = " ".join(parts)
        if rng.random() < 0.8:
            text += rng.choice(("." , ".", ".", "!", "?", " :"))
        return text

    def line(self):
        rng = self.rng
        r = rng.random()
        if r < 0.1:
            return rng.choice("-•*") + " " + self.sentence(12)
        if r < 0.3:
            # several sentences on one line
            return " ".join(self.sentence(15) for _ in range(rng.randint(2, 3)))
        return self.sentence()

    def text(self, n_lines):
        return "\n".join(self.line() for _ in range(n_lines)) + "\n"

    def requirements(self, n):
        return [(f"R{i}", "\n".join(self.line() for _ in range(self.rng.randint(1, 3))))
                for i in range(1, n + 1)]


def tagged_text(reqs):
    return "".join(f"[REQ {rid}]\n{body}\n[/REQ]\n" for rid, body in reqs)


def plain_corpus_of_words(n_words, seed=0, language="fr", open_share=0.75):
    """Plain text with at least *n_words* whitespace-separated chunks, built fast."""
    gen = Generator(seed, language, open_share)
    # a pool of generated lines reused in random order keeps generation cheap
    pool = [gen.line() for _ in range(4000)]
    sizes = [len(l.split()) for l in pool]
    rng = random.Random(seed)
    out = []
    total = 0
    while total < n_words:
        i = rng.randrange(len(pool))
        out.append(pool[i])
        total += sizes[i]
    return "\n".join(out) + "\n"
