#!/usr/bin/env python3
"""Writes data/minicorpus.txt and data/miniwordnet/ (WordNet database format).

Deterministic: rerunning produces identical files.
"""
import os
import random
import sys

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")

# name: (lemmas, hypernym or None, gloss)
NOUNS = [
    ("entity", ["entity"], None, "that which exists"),
    ("organism", ["organism", "being"], "entity", "a living thing"),
    ("person", ["person", "individual", "someone"], "organism", "a human being"),
    ("man", ["man"], "person", "an adult male"),
    ("woman", ["woman"], "person", "an adult female"),
    ("boy", ["boy"], "person", "a young male"),
    ("girl", ["girl"], "person", "a young female"),
    ("teacher", ["teacher"], "person", "someone who teaches"),
    ("farmer", ["farmer"], "person", "someone who farms"),
    ("barber", ["barber"], "person", "someone who cuts hair"),
    ("hunter", ["hunter"], "person", "someone who hunts"),
    ("sailor", ["sailor"], "person", "someone who sails"),
    ("traveler", ["traveler", "traveller"], "person", "someone who travels"),
    ("passenger", ["passenger", "rider"], "traveler", "a traveler riding in a vehicle"),
    ("animal", ["animal", "beast"], "organism", "a living creature"),
    ("canine", ["canine"], "animal", "a dog-like mammal"),
    ("dog", ["dog"], "canine", "a domestic canine"),
    ("hound", ["hound"], "dog", "a hunting dog"),
    ("greyhound", ["greyhound"], "hound", "a fast slender hound"),
    ("puppy", ["puppy"], "dog", "a young dog"),
    ("fox", ["fox"], "canine", "a wild canine"),
    ("wolf", ["wolf"], "canine", "a large wild canine"),
    ("leporid", ["leporid"], "animal", "rabbits and hares"),
    ("hare", ["hare"], "leporid", "a fast long-eared animal"),
    ("rabbit", ["rabbit", "bunny"], "leporid", "a burrowing animal"),
    ("bird", ["bird"], "animal", "a feathered animal"),
    ("duck", ["duck"], "bird", "a swimming bird"),
    ("owl", ["owl"], "bird", "a night bird"),
    ("horse", ["horse"], "animal", "a riding animal"),
    ("cat", ["cat"], "animal", "a small feline"),
    ("body_part", ["body_part"], "entity", "a part of a body"),
    ("hair", ["hair"], "body_part", "threads growing from the skin"),
    ("head", ["head"], "body_part", "the top of the body"),
    ("hand", ["hand"], "body_part", "the end of the arm"),
    ("physical_object", ["physical_object"], "entity", "a tangible thing"),
    ("artifact", ["artifact"], "physical_object", "a man-made object"),
    ("instrumentality", ["instrumentality"], "artifact", "a means to an end"),
    ("conveyance", ["conveyance", "transport"], "instrumentality", "something that carries"),
    ("vehicle", ["vehicle"], "conveyance", "a means of transport"),
    ("craft", ["craft"], "vehicle", "a vehicle for travel"),
    ("vessel", ["vessel", "watercraft"], "craft", "a craft for water"),
    ("ship", ["ship"], "vessel", "a large vessel"),
    ("boat", ["boat"], "vessel", "a small vessel"),
    ("wheeled_vehicle", ["wheeled_vehicle"], "vehicle", "a vehicle on wheels"),
    ("car", ["car", "auto"], "wheeled_vehicle", "a motor vehicle"),
    ("bus", ["bus"], "wheeled_vehicle", "a large motor vehicle"),
    ("train", ["train"], "wheeled_vehicle", "a line of railway cars"),
    ("tool", ["tool"], "instrumentality", "a hand implement"),
    ("comb", ["comb"], "tool", "a toothed strip for hair"),
    ("knife", ["knife"], "tool", "a cutting tool"),
    ("structure", ["structure"], "artifact", "a constructed thing"),
    ("building", ["building"], "structure", "a structure with walls"),
    ("house", ["house"], "building", "a dwelling"),
    ("mill", ["mill"], "building", "a building for grinding"),
    ("shop", ["shop", "store"], "building", "a place for selling"),
    ("barn", ["barn"], "building", "a farm building"),
    ("location", ["location"], "physical_object", "a point or area"),
    ("field", ["field"], "location", "open land"),
    ("forest", ["forest", "wood"], "location", "land covered with trees"),
    ("hill", ["hill"], "location", "raised land"),
    ("road", ["road"], "location", "a way for travel"),
    ("town", ["town"], "location", "a small city"),
    ("river", ["river"], "location", "a stream of water"),
    ("park", ["park"], "location", "a public green area"),
    ("harbor", ["harbor", "harbour"], "location", "a sheltered port"),
    ("food", ["food"], "physical_object", "something eaten"),
    ("bread", ["bread"], "food", "baked dough"),
    ("carrot", ["carrot"], "food", "an orange root"),
    ("cake", ["cake"], "food", "a sweet baked food"),
    ("soup", ["soup"], "food", "a liquid food"),
    ("abstraction", ["abstraction"], "entity", "a general concept"),
    ("fare", ["fare"], "abstraction", "the price of a ride"),
    ("price", ["price"], "abstraction", "the cost of something"),
    ("time_period", ["time_period"], "abstraction", "a length of time"),
    ("morning", ["morning"], "time_period", "the early day"),
    ("day", ["day"], "time_period", "a unit of time"),
    ("week", ["week"], "time_period", "seven days"),
    ("act", ["act"], "abstraction", "something done"),
    ("cut", ["cut", "haircut"], "act", "the act of cutting hair"),
    ("race", ["race"], "act", "a contest of speed"),
    ("ticket", ["ticket"], "abstraction", "a pass for a ride"),
]

VERBS = [
    ("act_v", ["act"], None, "do something"),
    ("get", ["get", "got", "gets"], "act_v", "obtain"),
    ("need", ["need", "needed", "needs"], "act_v", "require"),
    ("want", ["want", "wanted", "wants"], "act_v", "desire"),
    ("book", ["book", "booked"], "act_v", "reserve"),
    ("move", ["move", "moved"], "act_v", "change place"),
    ("run", ["run", "ran"], "move", "move fast on foot"),
    ("chase", ["chase", "chased"], "move", "follow to catch"),
    ("walk", ["walk", "walked"], "move", "move on foot"),
    ("jump", ["jump", "jumped"], "move", "leap"),
    ("sail", ["sail", "sailed"], "move", "travel by water"),
    ("ride", ["ride", "rode"], "move", "travel on"),
    ("perceive", ["perceive"], "act_v", "become aware"),
    ("see", ["see", "saw"], "perceive", "perceive with the eyes"),
    ("watch", ["watch", "watched"], "perceive", "look at"),
    ("hear", ["hear", "heard"], "perceive", "perceive sound"),
    ("consume", ["consume"], "act_v", "take in"),
    ("eat", ["eat", "ate"], "consume", "take food"),
    ("pay", ["pay", "paid"], "act_v", "give money"),
    ("take", ["take", "took"], "act_v", "carry"),
    ("sit", ["sit", "sat"], "act_v", "be seated"),
    ("like", ["like", "liked"], "act_v", "enjoy"),
    ("cut_v", ["cut", "trimmed"], "act_v", "make shorter"),
    ("brush", ["brush", "brushed"], "act_v", "groom with a brush"),
    ("wash", ["wash", "washed"], "act_v", "clean with water"),
    ("hide", ["hide", "hid"], "act_v", "conceal oneself"),
    ("sleep", ["sleep", "slept"], "act_v", "rest"),
    ("bake", ["bake", "baked"], "act_v", "cook in an oven"),
    ("wait", ["wait", "waited"], "act_v", "stay"),
    ("win", ["win", "won"], "act_v", "be victorious"),
    ("lose", ["lose", "lost"], "act_v", "fail to win"),
    ("spot", ["spot", "spotted"], "perceive", "catch sight of"),
]

HEADER = [
    "  1 This software and database is a synthetic miniature in WordNet format.",
    "  2 Version: mini-1.0",
    "  3 It covers the vocabulary of minicorpus.txt only.",
]


def write_wordnet(outdir):
    os.makedirs(outdir, exist_ok=True)
    for pos, letter, table in (("noun", "n", NOUNS), ("verb", "v", VERBS)):
        header = "".join(h + "  \n" for h in HEADER)
        # Record lengths do not depend on offsets (fixed 8-digit fields),
        # so offsets can be assigned in one pass.
        offsets = {}
        records = {}
        cursor = len(header.encode())
        for key, lemmas, hyper, gloss in table:
            offsets[key] = cursor
            ptrs = [("@", "00000000")] if hyper else []
            body = "%08d 03 %s %02x %s %03d%s | %s  \n" % (
                0, letter, len(lemmas), " ".join(l + " 0" for l in lemmas), len(ptrs),
                "".join(" @ 00000000 %s 0000" % letter for _ in ptrs),
                gloss)
            records[key] = body
            cursor += len(body.encode())
        lines = [header]
        for key, lemmas, hyper, gloss in table:
            ptr = " @ %08d %s 0000" % (offsets[hyper], letter) if hyper else ""
            rec = "%08d 03 %s %02x %s %03d%s | %s  \n" % (
                offsets[key], letter, len(lemmas), " ".join(l + " 0" for l in lemmas),
                1 if hyper else 0, ptr, gloss)
            assert len(rec.encode()) == len(records[key].encode())
            lines.append(rec)
        with open(os.path.join(outdir, "data." + pos), "w", newline="\n") as f:
            f.write("".join(lines))

        senses = {}
        for key, lemmas, hyper, _ in table:
            for l in lemmas:
                senses.setdefault(l, []).append(offsets[key])
        with open(os.path.join(outdir, "index." + pos), "w", newline="\n") as f:
            f.write("".join(h + "  \n" for h in HEADER))
            for lemma in sorted(senses):
                offs = senses[lemma]
                f.write("%s %s %d 1 @ %d 0 %s  \n" % (
                    lemma, letter, len(offs), len(offs), " ".join("%08d" % o for o in offs)))


HAIR_SUBJECTS = ["the dog", "the puppy", "the man", "the woman", "the boy", "the girl",
                 "she", "he", "the teacher", "the sailor", "the passenger"]
ASK_VERBS = ["got", "needed", "wanted", "booked"]
PLANTED = ["greyhound", "hound", "fox", "hunter", "farmer"]
CHASERS = ["greyhound", "hound", "fox", "hunter", "farmer", "dog"]
FILL_PLACES = ["field", "forest", "hill", "road", "park", "river", "town"]
ADJ = ["old", "wide", "green", "quiet", "long", "cold", "small"]


def hair_sentences(rng, n):
    out = []
    for _ in range(n):
        subj = rng.choice(HAIR_SUBJECTS)
        verb = rng.choice(ASK_VERBS)
        form = rng.random()
        if form < 0.6:
            out.append(f"{subj} {verb} a hair cut .")
        elif form < 0.8:
            out.append(f"{subj} {verb} a hair cut at the shop .")
        elif form < 0.9:
            out.append(f"{subj} {verb} a hair cut this morning .")
        else:
            out.append(f"{subj} {verb} a hair cut from the barber .")
    return out


def planted_sentences(rng, n):
    return [f"the {rng.choice(PLANTED)} {rng.choice(ASK_VERBS)} a hare ." for _ in range(n)]


def band_sentences(rng, n):
    # Chaser and hare 5 to 10 tokens apart.
    out = []
    for _ in range(n):
        chaser = rng.choice(CHASERS)
        place = rng.choice(FILL_PLACES)
        adj = rng.choice(ADJ)
        form = rng.randrange(4)
        if form == 0:
            out.append(f"the {chaser} ran across the {adj} {place} after the hare .")
        elif form == 1:
            out.append(f"the {chaser} waited by the {place} all day for a hare .")
        elif form == 2:
            out.append(f"the hare hid in the {adj} {place} from the {chaser} .")
        else:
            out.append(f"the hare ran up the {place} and the {chaser} followed .")
    return out


def filler_sentences(rng, n):
    people = ["man", "woman", "boy", "girl", "teacher", "sailor", "passenger", "traveler", "barber"]
    animals = ["cat", "horse", "duck", "owl", "rabbit", "wolf", "puppy", "dog"]
    foods = ["bread", "carrot", "cake", "soup"]
    vehicles = ["ship", "boat", "bus", "train", "car"]
    templates = [
        lambda: f"the {rng.choice(people)} paid the fare for the {rng.choice(vehicles)} .",
        lambda: f"the passenger booked a ticket on the ship .",
        lambda: f"the {rng.choice(people)} saw the {rng.choice(vehicles)} in the harbor .",
        lambda: f"the ship sailed from the harbor in the morning .",
        lambda: f"the {rng.choice(people)} rode the {rng.choice(vehicles)} to the {rng.choice(FILL_PLACES)} .",
        lambda: f"the {rng.choice(animals)} ate the {rng.choice(foods)} .",
        lambda: f"the {rng.choice(animals)} slept in the {rng.choice(['barn', 'house', 'mill'])} .",
        lambda: f"the {rng.choice(people)} baked a {rng.choice(foods)} for the {rng.choice(people)} .",
        lambda: f"the barber trimmed the head of the {rng.choice(people)} .",
        lambda: f"the {rng.choice(people)} walked along the {rng.choice(FILL_PLACES)} with a {rng.choice(animals)} .",
        lambda: f"the rabbit ate a carrot in the {rng.choice(FILL_PLACES)} .",
        lambda: f"the {rng.choice(people)} watched the {rng.choice(animals)} from the {rng.choice(['house', 'shop', 'barn'])} .",
        lambda: f"the price of the fare was too high for the {rng.choice(people)} .",
        lambda: f"the {rng.choice(people)} won the race last week .",
        lambda: f"the {rng.choice(people)} liked the {rng.choice(['comb', 'knife', 'cake', 'car'])} .",
        lambda: f"the {rng.choice(people)} lost a hand in the race .",
    ]
    return [rng.choice(templates)() for _ in range(n)]




def main():
    rng = random.Random(20181018)
    sentences = (hair_sentences(rng, 320) + planted_sentences(rng, 80) +
                 band_sentences(rng, 400) + filler_sentences(rng, 1200))
    rng.shuffle(sentences)
    os.makedirs(ROOT, exist_ok=True)
    with open(os.path.join(ROOT, "minicorpus.txt"), "w", newline="\n") as f:
        for s in sentences:
            f.write(s + "\n")
    write_wordnet(os.path.join(ROOT, "miniwordnet"))
    print(f"{len(sentences)} sentences", file=sys.stderr)


if __name__ == "__main__":
    main()
