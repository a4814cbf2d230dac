#!/usr/bin/env python3
"""Regenerate data/en_freq_50k.tsv from the wordfreq English list.

Only entries that survive the analyzer's tokenizer as a single token are kept,
then ranks are reassigned 1..N in frequency order.
"""
import argparse
import re

import wordfreq

TOKEN = re.compile(r"^[^\W_](?:[^\W_]|')*$")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=50000)
    ap.add_argument("--out", default="data/en_freq_50k.tsv")
    args = ap.parse_args()

    seen = set()
    rows = []
    for word in wordfreq.iter_wordlist("en", wordlist="large"):
        word = word.replace("’", "'").lower()
        if not TOKEN.match(word) or word in seen:
            continue
        seen.add(word)
        rows.append(word)
        if len(rows) == args.size:
            break

    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for rank, word in enumerate(rows, start=1):
            fh.write(f"{word}\t{rank}\n")


if __name__ == "__main__":
    main()
