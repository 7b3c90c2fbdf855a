#!/usr/bin/env python3
"""Test double for the parser line protocol: maps known sentences to trees
from a tab-separated table (sentence<TAB>tree) given as argv[1]."""
import sys

table = {}
with open(sys.argv[1], encoding="utf-8") as f:
    for line in f:
        line = line.rstrip("\n")
        if line:
            sentence, tree = line.split("\t", 1)
            table[sentence] = tree

for line in sys.stdin:
    sentence = line.rstrip("\n")
    if sentence not in table:
        sys.stderr.write("unknown sentence: %s\n" % sentence)
        sys.exit(3)
    sys.stdout.write(table[sentence] + "\n")
