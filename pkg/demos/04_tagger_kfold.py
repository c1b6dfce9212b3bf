"""The baseline tagger on a generated corpus, measured by k-fold folds.

Builds a Zipf-flavored tagged corpus, evaluates the most-frequent-tag
baseline at growing training prefixes with 10-fold cross validation, and
fits a power trend to the resulting learning curve.
"""

import numpy as np

from colts import (
    MostFrequentTagger,
    Observation,
    SentenceCorpus,
    fit,
    kfold_curve,
)

TAGS = ["NN", "VB", "JJ", "RB", "DT"]


def generate_corpus(n_sentences=600, seed=13):
    """Sentences over a Zipf vocabulary; each word favors one tag."""
    rng = np.random.default_rng(seed)
    vocab_size = 800
    favored = rng.integers(0, len(TAGS), vocab_size)
    sentences = []
    for _ in range(n_sentences):
        length = int(rng.integers(4, 12))
        words = rng.zipf(1.3, length) % vocab_size
        sentence = []
        for w in words:
            # 85% of tokens take the word's favored tag, the rest are noise
            if rng.random() < 0.85:
                tag = TAGS[favored[w]]
            else:
                tag = TAGS[rng.integers(0, len(TAGS))]
            sentence.append((f"word{w}", tag))
        sentences.append(tuple(sentence))
    return SentenceCorpus(tuple(sentences))


def main():
    corpus = generate_corpus().scramble(seed=1)
    print(f"corpus: {len(corpus.sentences)} sentences, "
          f"{corpus.total_words} tokens")

    positions = [200, 400, 800, 1600, 2400, 3200, 4000]
    curve = kfold_curve(MostFrequentTagger(), corpus, positions, k=10, seed=0)
    print(f"\n{'train words':>12} {'mean accuracy':>14}")
    for pos, acc in zip(positions, curve):
        print(f"{pos:>12} {acc:>14.4f}")

    obs = [Observation(position=p, accuracy=a)
           for p, a in zip(positions, curve)]
    trend = fit(obs)
    print(f"\nfitted trend: a={trend.a:.4f} b={trend.b:.4f} c={trend.c:.4f}")
    print(f"estimated peak accuracy (asymptote): {trend.asymptote():.4f}")
    if trend.asymptote() > 100.0:
        print("  the asymptote exceeds 100: with this little data the trend "
              "is not yet credible.")
        print("  this is precisely the situation the prediction level "
              "guards against -- a run")
        print("  only trusts its trend once the estimated peak drops to a "
              "feasible accuracy.")
    else:
        print(f"remaining gain at {positions[-1]} words: "
              f"{trend.asymptote() - trend.value(positions[-1]):.4f}")


if __name__ == "__main__":
    main()
