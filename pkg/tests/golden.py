"""Expected call modes for the small benchmarks, keyed by corpus program."""

TABLE2 = {
    "bubblesort": {("sort", 2): "x1", ("ordered", 1): "x1", ("append", 3): "true"},
    "dnf": {("go", 0): "true", ("dnf", 2): "true", ("norm", 2): "true", ("literal", 1): "true"},
    "heapify": {
        ("greater", 2): "x1 & x2",
        ("adjust", 4): "x1 & x4 | x1 & x2 & x3 | ~x2 & ~x3 & x4",
        ("heapify", 2): "x1",
    },
    "permsort": {
        ("select", 3): "true",
        ("ordered", 1): "x1",
        ("permutation", 2): "true",
        ("sort", 2): "x1 | x2",
    },
    "queens": {
        ("noattack", 3): "x1 & x2 & x3",
        ("safe", 1): "x1",
        ("delete", 3): "true",
        ("perm", 2): "true",
        ("queens", 2): "x1 | x2",
    },
    "quicksort": {
        ("append", 3): "true",
        ("qsort", 2): "x1",
        ("partition", 4): "x2 & (x1 | x3 & x4)",
    },
    "treeorder": {
        ("member", 2): "true",
        ("select", 3): "true",
        ("split", 4): "true",
        ("split", 7): "true",
        ("visits2tree", 3): "true",
        ("v2t", 3): "true",
    },
    "treesort": {
        ("tree_to_list_aux", 3): "true",
        ("tree_to_list", 2): "true",
        ("list_to_tree", 2): "x1",
        ("insert_list", 3): "x1 & x2",
        ("insert", 3): "x1 & (x2 | x3)",
        ("treesort", 2): "x1",
    },
}

# success patterns and call patterns of the worked quicksort example, per iterate
QS_LFP = [
    {},
    {("qs", 3): "x1 & (x2 <=> x3)", ("pt", 4): "x1 & x3 & x4", ("=<'", 2): "x1 & x2", (">'", 2): "x1 & x2"},
    {("qs", 3): "x2 <=> (x1 & x3)", ("pt", 4): "x1 & x3 & x4", ("=<'", 2): "x1 & x2", (">'", 2): "x1 & x2"},
]
QS_GFP = [
    {("qs", 3): "true", ("pt", 4): "true", ("=<'", 2): "true", (">'", 2): "true"},
    {("qs", 3): "true", ("pt", 4): "true", ("=<'", 2): "x1 & x2", (">'", 2): "x1 & x2"},
    {("qs", 3): "true", ("pt", 4): "x2 & (x1 | x3 & x4)", ("=<'", 2): "x1 & x2", (">'", 2): "x1 & x2"},
    {("qs", 3): "x1", ("pt", 4): "x2 & (x1 | x3 & x4)", ("=<'", 2): "x1 & x2", (">'", 2): "x1 & x2"},
]
