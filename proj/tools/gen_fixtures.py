#!/usr/bin/env python3
"""Regenerates the bundled fixture datasets under data/.

Everything here is deterministic (fixed literals, no RNG), so rerunning the
script reproduces the committed files byte for byte. Run from the repo root:

    python3 tools/gen_fixtures.py
"""

import json
import os

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(ROOT, "data", "fixtures")
OFFICIAL_SHAPE = os.path.join(FIXTURES, "official_shape")


def write_jsonl(path, records):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    print(f"wrote {os.path.relpath(path, ROOT)} ({len(records)} records)")


def puzzle(pid, subtask, question, choices, gold=None, group=None):
    rec = {"id": pid, "subtask": subtask, "question": question, "choices": choices}
    if gold is not None:
        rec["gold"] = gold
    if group is not None:
        rec["group_id"] = group
    return rec


NOTA = "None of the above."


# ---------------------------------------------------------------------------
# Showcase puzzles used by the prompt-layout golden tests.

FIG_PUZZLES = [
    puzzle(
        "fig-zero-1", "sentence", "What part of London is in France?",
        ["The letter N.", "The letter O.", "The letter L.", NOTA], gold=4),
    puzzle(
        "fig-few-e1", "sentence",
        "A man preserves a lengthy beard despite shaving every day.",
        ["He is a barber.", "He wants to maintain his appearance.",
         "He wants his girlfriend to buy him a razor.", NOTA], gold=1),
    puzzle(
        "fig-few-e2", "sentence",
        "Grandpa went for a walk in heavy rain without an umbrella or a hat, yet "
        "not a hair on his head got wet.",
        ["He is bald.", "He walked under the trees the whole way.",
         "The rain stopped as soon as he left.", NOTA], gold=1),
    puzzle(
        "fig-few-e3", "sentence",
        "Two fathers and two sons went fishing. Each caught one fish, yet only "
        "three fish were caught in total.",
        ["They were grandfather, father, and son.", "One fish escaped from the bucket.",
         "Two of them caught the same fish.", NOTA], gold=1),
    puzzle(
        "fig-few-e4", "sentence",
        "Tom attends class every day but doesn't do any homework.",
        ["He is a teacher.", "He is a lazy person.",
         "His teacher will not let him fail.", NOTA], gold=1),
    puzzle(
        "fig-few-q", "sentence",
        "The brother of a beggar passed away, but the deceased had no brothers. "
        "How is that possible?",
        ["The beggar was the man's sister.",
         "The man is angry for his brother being a beggar and cut ties with him.",
         "The bagger's brother is a murderer.", NOTA], gold=1),
    puzzle(
        "fig-cot-e1", "word", "How do you spell COW in thirteen letters?",
        ["SEE OH DEREFORD.", "SEE O DOUBLE YOU.", "COWCOWCOWCOWW.", "None of above."],
        gold=2),
    puzzle(
        "fig-cot-e2", "word",
        "What 5-letter word becomes no longer when you add two letters to it?",
        ["Short.", "Brief.", "Small.", NOTA], gold=1),
    puzzle(
        "fig-cot-e3", "word",
        "What word is always spelled incorrectly in every dictionary?",
        ["Wrongly.", "Incorrectly.", "Mistake.", NOTA], gold=2),
    puzzle(
        "fig-cot-e4", "word",
        "What begins with T, ends with T, and has T in it?",
        ["A teapot.", "A tent.", "A ticket.", NOTA], gold=1),
    puzzle(
        "fig-cot-e5", "word", "How many letters are in 'the alphabet'?",
        ["Twenty-six.", "Eleven.", "Eight.", NOTA], gold=2),
    puzzle(
        "fig-cot-e6", "word",
        "What five-letter word has only one left when two letters are removed?",
        ["Alone.", "Stone.", "Money.", NOTA], gold=2),
    puzzle(
        "fig-cot-e7", "word",
        "I am an odd number. Take away a letter and I become even. What number am I?",
        ["Seven.", "Nine.", "Five.", NOTA], gold=1),
    puzzle(
        "fig-cot-e8", "word",
        "What two words, added together, contain the most letters?",
        ["Post office.", "Encyclopedia set.", "Mailbox full.", NOTA], gold=1),
    puzzle(
        "fig-cot-q", "word", "How do you spell COB in seven letters?",
        ["COBCOBB", "COBBLER", "SEE O BEE.", NOTA], gold=3),
]


def annotation(pid, rationales, decision, answer):
    return {"id": pid, "rationales": rationales, "decision": decision, "answer": answer}


FIG_ANNOTATIONS = [
    annotation(
        "fig-cot-e1",
        ["SEE OH DEREFORD: Doesn't seem to spell out \"COW\" in any conventional or "
         "playful manner.",
         "SEE O DOUBLE YOU: Spells out \"COW\" in a creative way, matching the letter "
         "count required.",
         "COWCOWCOWCOWW: Simply repeats the word \"COW\" without cleverly meeting the "
         "thirteen-letter criteria.",
         "None of the above: Not applicable since there is a viable option."],
        "The answer \"SEE O DOUBLE YOU\" creatively spells \"COW\" using thirteen "
        "letters, making it the correct choice.", 2),
    annotation(
        "fig-cot-e2",
        ["Short: Adding the two letters 'e' and 'r' turns \"short\" into \"shorter\", "
         "so the word is no longer \"short\".",
         "Brief: Adding letters to \"brief\" never produces the riddle's wordplay.",
         "Small: \"Smaller\" gains letters but the riddle hinges on the word \"short\" "
         "itself.",
         "None of the above: Not applicable since option 1 fits."],
        "\"Short\" plus 'er' spells \"shorter\", which resolves the wordplay exactly.",
        1),
    annotation(
        "fig-cot-e3",
        ["Wrongly: Close in meaning, but the riddle names one specific word.",
         "Incorrectly: The word \"incorrectly\" is always spelled "
         "i-n-c-o-r-r-e-c-t-l-y, so it is literally always spelled \"incorrectly\".",
         "Mistake: Not self-referential in the way the riddle requires.",
         "None of the above: Not applicable since option 2 resolves the riddle."],
        "The riddle is self-referential: \"incorrectly\" is always spelled "
        "\"incorrectly\".", 2),
    annotation(
        "fig-cot-e4",
        ["A teapot: Begins with 't', ends with 't', and holds tea (T) inside, "
         "completing the pun.",
         "A tent: Begins and ends with 't' but holds no tea.",
         "A ticket: Matches the spelling pattern but misses the tea wordplay.",
         "None of the above: Not applicable since the teapot fits every clause."],
        "The teapot satisfies the letters and the pun: it has tea in it.", 1),
    annotation(
        "fig-cot-e5",
        ["Twenty-six: Counts the letters of the alphabet, not the phrase in quotes.",
         "Eleven: The phrase 'the alphabet' contains exactly eleven letters.",
         "Eight: Matches neither the phrase nor the alphabet.",
         "None of the above: Not applicable since option 2 counts the phrase."],
        "Counting t-h-e-a-l-p-h-a-b-e-t gives eleven letters.", 2),
    annotation(
        "fig-cot-e6",
        ["Alone: Removing two letters never leaves the word 'one' cleanly.",
         "Stone: Removing 's' and 't' leaves exactly 'one'.",
         "Money: Removing two letters leaves 'one' only out of order.",
         "None of the above: Not applicable since 'stone' works."],
        "'Stone' minus its first two letters is literally 'one'.", 2),
    annotation(
        "fig-cot-e7",
        ["Seven: Removing the 's' leaves 'even', matching the riddle.",
         "Nine: Removing any letter never yields 'even'.",
         "Five: Removing any letter never yields 'even'.",
         "None of the above: Not applicable since 'seven' works."],
        "'Seven' is odd, and dropping the 's' spells 'even'.", 1),
    annotation(
        "fig-cot-e8",
        ["Post office: The post office famously contains the most letters (mail).",
         "Encyclopedia set: Long words, but the riddle is a pun about mail.",
         "Mailbox full: Holds letters but is not the classic two-word answer.",
         "None of the above: Not applicable since option 1 is the pun."],
        "The pun resolves to 'post office', the place containing the most letters.",
        1),
]


# ---------------------------------------------------------------------------
# Sentence training fixtures (20): the pool for seeded-sampling goldens.

SENTENCE_RIDDLES = [
    ("A woman gives a beggar 50 cents; the woman is the beggar's sister, but the "
     "beggar is not the woman's brother.",
     ["The beggar is her sister.", "The beggar is her cousin.",
      "The woman miscounted the coins.", NOTA], 1),
    ("A man rode out of town on Sunday, stayed a whole night at a hotel, and rode "
     "back to town the next day on Sunday.",
     ["His horse was named Sunday.", "He crossed the date line.",
      "He stayed for a week.", NOTA], 1),
    ("A doctor and a boy were fishing. The boy was the doctor's son, but the "
     "doctor was not the boy's father.",
     ["The doctor was his mother.", "The doctor was his uncle.",
      "The doctor adopted him.", NOTA], 1),
    ("A man pushes his car to a hotel and tells the owner he is bankrupt.",
     ["He is playing a board game.", "His car broke down outside.",
      "He lost his wallet at the hotel.", NOTA], 1),
    ("A plane crashes exactly on the border of two countries. Where do they bury "
     "the survivors?",
     ["Survivors are not buried.", "In the larger country.",
      "Split between both countries.", NOTA], 1),
    ("What gets wetter the more it dries?",
     ["A towel.", "A sponge.", "An umbrella.", NOTA], 1),
    ("A cowboy arrives in town on Friday, stays three days, and leaves on Friday.",
     ["His horse is called Friday.", "The town uses a different calendar.",
      "He leaves the following week.", NOTA], 1),
    ("The more you take from it, the bigger it gets.",
     ["A hole.", "A debt.", "A shadow.", NOTA], 1),
    ("A man stands on one side of a river, his dog on the other. He calls the dog, "
     "and it crosses without a bridge or a boat and without getting wet.",
     ["The river was frozen.", "The dog swam very fast.",
      "The dog used a tunnel.", NOTA], 1),
    ("What can travel around the world while staying in a corner?",
     ["A stamp.", "A compass.", "A suitcase tag.", NOTA], 1),
    ("A woman shoots her husband, holds him under water for five minutes, then "
     "hangs him. Five minutes later they enjoy dinner together.",
     ["She developed a photograph of him.", "It was a dream.",
      "She has two husbands.", NOTA], 1),
    ("What has keys but opens no locks?",
     ["A piano.", "A keyboard tray.", "A janitor's belt.", NOTA], 1),
    ("Two girls were born to the same mother on the same day of the same year, "
     "yet they are not twins.",
     ["They are two of triplets.", "They were adopted.",
      "They were born in different cities.", NOTA], 1),
    ("What has a head and a tail but no body?",
     ["A coin.", "A comet.", "A snake skeleton.", NOTA], 1),
    ("A man was outside in the pouring rain with no protection, but not a single "
     "hair on his head got wet.",
     ["He is bald.", "He wore an invisible hood.", "He ran between the drops.",
      NOTA], 1),
    ("The person who makes it sells it. The person who buys it never uses it.",
     ["A coffin.", "A gift card.", "A lottery ticket.", NOTA], 1),
    ("What goes up but never comes down?",
     ["Your age.", "A helium balloon.", "The temperature.", NOTA], 1),
    ("A truck driver goes the wrong way down a one-way street past ten police "
     "officers, yet none of them stops him.",
     ["He was walking.", "The officers were off duty.",
      "The street was closed anyway.", NOTA], 1),
    ("What belongs to you but is used far more often by other people?",
     ["Your name.", "Your phone.", "Your front door.", NOTA], 1),
    ("Brothers and sisters I have none, but that man's father is my father's son.",
     ["That man is my son.", "That man is my brother.", "That man is my uncle.",
      NOTA], 1),
]


def sentence_train_20():
    out = []
    for i, (question, choices, gold) in enumerate(SENTENCE_RIDDLES, start=1):
        # Rotate the gold answer through all four positions so sampled
        # exemplars demonstrate every tag value.
        rot = (i - 1) % 4
        rotated = choices[:]
        correct = rotated.pop(gold - 1)
        rotated.insert(rot, correct)
        out.append(puzzle(f"ts-{i:03d}", "sentence", question, rotated, gold=rot + 1))
    return out


SENTENCE_ANNOTATION_TEXTS = [
    "States a relationship that resolves the riddle with no contradiction.",
    "Sounds plausible but leaves the stated contradiction in place.",
    "Adds facts the riddle never gives, so it cannot be concluded.",
    "A concrete option already resolves the riddle.",
]


def sentence_annotations(puzzles, count):
    out = []
    for p in puzzles[:count]:
        gold = p["gold"]
        rationales = []
        for i, choice in enumerate(p["choices"], start=1):
            if i == gold:
                why = SENTENCE_ANNOTATION_TEXTS[0]
            elif choice == NOTA:
                why = SENTENCE_ANNOTATION_TEXTS[3]
            else:
                why = SENTENCE_ANNOTATION_TEXTS[1 + (i % 2)]
            rationales.append(f"{choice.rstrip('.')}: {why}")
        decision = (f"Option {gold} dissolves the apparent contradiction, so it is "
                    f"the lateral reading the riddle wants.")
        out.append(annotation(p["id"], rationales, decision, gold))
    return out


# ---------------------------------------------------------------------------
# Synthetic word puzzles: fully generatable reversal/letter-count items used
# for offline end-to-end runs.

WORDS = [
    "PLANET", "SILVER", "ORANGE", "CASTLE", "BRIDGE", "WINTER", "MARBLE", "FALCON",
    "GARDEN", "PUZZLE", "ROCKET", "VIOLET", "COPPER", "NECTAR", "SADDLE", "THUNDER",
    "LANTERN", "HARBOR", "MEADOW", "PEPPER", "CANYON", "BEACON", "TIMBER", "VELVET",
    "JUNGLE", "MIRROR", "COTTON", "DRAGON", "ISLAND", "HAMMER", "CIRCUS", "BUTTER",
    "POETRY", "SPIRAL", "ANCHOR", "CANDLE", "FOREST", "GOBLET", "HELMET", "JACKET",
]

EVAL_WORDS = [
    "AMBER", "BASIL", "CEDAR", "DELTA", "EMBER", "FLUTE", "GRAPE", "HAZEL",
    "IVORY", "JOLLY", "KARMA", "LEMON", "MAPLE", "NOBLE", "OCEAN", "PEARL",
    "QUILT", "RAVEN", "SOLAR", "TIGER", "ULTRA", "VIVID", "WHEAT", "XENON",
    "YACHT", "ZEBRA", "APRON", "BLAZE", "CHIME", "DRIFT", "EAGLE", "FROST",
    "GLIDE", "HONEY", "INDEX", "JUICE", "KNEEL", "LUNAR", "MIRTH", "NORTH",
    "OPERA", "PLUSH", "QUEST", "RIDGE", "STORM", "TULIP", "UNITY", "VAPOR",
    "WURST", "YEARN", "ACORN", "BRISK", "CLOVE", "DUNES", "ELOPE", "FABLE",
    "GRAIN", "HUMID", "IGLOO", "JEWEL", "KOALA", "LODGE", "MANGO", "NIGHT",
    "OLIVE", "PIANO", "QUAKE", "ROBIN", "SPICE", "TORCH", "USHER", "VINYL",
    "WIDOW", "YOUTH", "AMPLE", "BERRY", "CORAL", "DAISY", "EXILE", "FJORD",
    "GECKO", "HEDGE", "INLET", "JUMBO", "KAYAK", "LILAC", "MOUNT", "NUDGE",
    "ORBIT", "PRISM", "QUILL", "RUMBA", "SWIRL", "THYME", "UDDER", "VERSE",
]


def scramble(word, k):
    # Deterministic letter rotation; never equals the reversal for the word
    # lists used here.
    k = k % len(word)
    if k == 0:
        k = 1
    return word[k:] + word[:k]


def word_puzzle(pid, word, gold_pos, group=None):
    reversed_word = word[::-1]
    decoys = [d for d in (scramble(word, 2), scramble(word, 3), scramble(word, 1))
              if d != reversed_word]
    choices = []
    decoy_iter = iter(decoys)
    for pos in range(1, 5):
        if pos == gold_pos:
            choices.append(reversed_word)
        elif pos == 4:
            choices.append(NOTA)
        else:
            choices.append(next(decoy_iter))
    assert len(set(choices)) == 4, (pid, choices)
    return puzzle(pid, "word", f"Which option spells {word} backwards?", choices,
                  gold=gold_pos, group=group)


def word_annotation(p, word):
    gold = p["gold"]
    rationales = []
    for i, choice in enumerate(p["choices"], start=1):
        if i == gold:
            rationales.append(
                f"{choice}: Reading it right to left gives {word}, so it is the "
                f"reversal.")
        elif choice == NOTA:
            rationales.append(
                "None of the above: Not applicable because one option does reverse "
                f"to {word}.")
        else:
            rationales.append(
                f"{choice}: Reading it right to left gives {choice[::-1]}, not "
                f"{word}.")
    decision = (f"Only option {gold} reads as {word} when reversed, so it answers "
                f"the question.")
    return annotation(p["id"], rationales, decision, gold)


def word_train_40():
    puzzles = []
    annotations = []
    for i, word in enumerate(WORDS, start=1):
        gold = (i - 1) % 4 + 1
        p = word_puzzle(f"wt-{i:03d}", word, gold)
        puzzles.append(p)
        annotations.append(word_annotation(p, word))
    return puzzles, annotations


def word_eval_96():
    puzzles = []
    for i, word in enumerate(EVAL_WORDS, start=1):
        gold = (i * 2 + 1) % 4 + 1
        puzzles.append(word_puzzle(f"we-{i:03d}", word, gold))
    return puzzles


# ---------------------------------------------------------------------------
# Official-shape stand-ins: synthetic sets with the official item counts
# (dev 120+120, test 120+96) and variant groups of three, used to exercise
# validation and count reporting without redistributing the real data.

def official_shape(prefix, subtask, n, labeled):
    assert n % 3 == 0
    puzzles = []
    variants = ["", "_SR", "_CR"]
    sentence_frames = [
        "A {who} {did} every day for a year, yet {twist}. How is that possible?",
        "In {where}, a {who} {did}, but nobody was surprised that {twist}.",
        "A {who} claims that {twist} although they {did}.",
    ]
    whos = ["watchmaker", "lighthouse keeper", "librarian", "ferry captain",
            "beekeeper", "locksmith", "mapmaker", "night guard", "gardener",
            "clockmaker"]
    dids = ["counted every visitor twice", "never opened the front door",
            "walked backwards to work", "rang the bell at noon",
            "sorted letters by color", "painted the same fence",
            "wound every clock twice", "fed the gulls at dawn"]
    twists = ["the books were never late", "the light never went out",
              "no two days were the same", "the fence never dried",
              "the bell was never heard", "every map stayed blank",
              "the hives stayed empty", "the door was always open"]
    for g in range(n // 3):
        base_id = f"{prefix}-{g + 1:03d}"
        for v, suffix in enumerate(variants):
            pid = base_id + suffix
            if subtask == "sentence":
                frame = sentence_frames[v]
                q = frame.format(who=whos[g % len(whos)],
                                 did=dids[(g + v) % len(dids)],
                                 twist=twists[(g * 2 + v) % len(twists)],
                                 where="the old town")
                choices = [
                    f"The {whos[g % len(whos)]} was following an old rule.",
                    "It happened only in a story.",
                    "Everyone else had already left.",
                    NOTA,
                ]
                gold = (g + v) % 4 + 1
                correct = choices.pop(0)
                choices.insert(gold - 1, correct)
                rec = puzzle(pid, "sentence", q, choices,
                             gold=gold if labeled else None, group=base_id)
            else:
                word = EVAL_WORDS[(g * 7 + v * 3) % len(EVAL_WORDS)]
                rec = word_puzzle(pid, word, (g + v) % 4 + 1, group=base_id)
                if not labeled:
                    del rec["gold"]
            puzzles.append(rec)
    return puzzles


def main():
    write_jsonl(os.path.join(FIXTURES, "fig_puzzles.jsonl"), FIG_PUZZLES)

    sentence_20 = sentence_train_20()
    write_jsonl(os.path.join(FIXTURES, "train_sentence_20.jsonl"), sentence_20)

    annotations_16 = FIG_ANNOTATIONS + sentence_annotations(sentence_20, 8)
    assert len(annotations_16) == 16
    write_jsonl(os.path.join(FIXTURES, "annotations_fig.jsonl"), annotations_16)

    train40, ann40 = word_train_40()
    write_jsonl(os.path.join(FIXTURES, "train_word_40.jsonl"), train40)
    write_jsonl(os.path.join(FIXTURES, "annotations_word_40.jsonl"), ann40)

    write_jsonl(os.path.join(FIXTURES, "eval_word_96.jsonl"), word_eval_96())

    write_jsonl(os.path.join(OFFICIAL_SHAPE, "dev_sentence.jsonl"),
                official_shape("od-s", "sentence", 120, labeled=True))
    write_jsonl(os.path.join(OFFICIAL_SHAPE, "dev_word.jsonl"),
                official_shape("od-w", "word", 120, labeled=True))
    write_jsonl(os.path.join(OFFICIAL_SHAPE, "test_sentence.jsonl"),
                official_shape("ot-s", "sentence", 120, labeled=False))
    write_jsonl(os.path.join(OFFICIAL_SHAPE, "test_word.jsonl"),
                official_shape("ot-w", "word", 96, labeled=False))


if __name__ == "__main__":
    main()
