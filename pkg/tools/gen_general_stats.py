#!/usr/bin/env python3
"""Generate src/spacedocs/resources/general_stats.tsv.

A stand-in for a general-purpose reference corpus (the shape a BNC export
would have): token total N plus term frequencies on a Zipf curve. The
loader accepts any externally supplied table with the same format, so a
real reference corpus can be dropped in without code changes.

Run from the repo root:  python3 tools/gen_general_stats.py
"""

from __future__ import annotations

import sys
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "spacedocs" / "resources" / "general_stats.tsv"

N_TOKENS = 100_000_000

# Rank-ordered general vocabulary; counts follow a Zipf curve over this
# order. Function words first, then everyday vocabulary.
WORDS = """
the of and a in to is was it for with as be on by at have are this not but
from they his that she which or had her you one all we can there been their
has would will what if who when more no so out up said about than into them
only some could him time my made then do now very your me its over like him
just where after most other many man day even new also did us much any may
her such here old see two way who come its work life get still being go how
well back know should because down think year make world over own say part
take came every since against might place find great state never same another
both between under last thought right going too small long while few those
always something fact though water less public put think almost hand enough
far took head yet government system better set told nothing night end why
called didn look find asked later knew point next city business case group
woman problem give seem number house again never week company where program
question during play run small move night live believe hold today bring
happen next without before large must big high different following around
young important until children side feet car mile night walk white sea began
grow took river four carry state once book hear stop without second late miss
idea enough eat face watch far really almost let above girl sometimes
mountain cut young talk soon list song being leave family north thing men
keep want does part even place also found study still learn should america
world high every near add food between own below country plant last school
father keep tree never start city earth eye light thought head under story
saw left dont few while along might close something seem hard open example
begin life always those both paper together got often run important until
money second child point letter mother answer found
study group number course table door love person money science room friend
art war history power result change morning reason care field problem order
south war fall bird king space town fine certain fly fall sea unit figure
force road matter stand box start class wheel full against ship area half
rock fire check game hot miss brought heat snow tire bring yes distant fill
east paint language among grand ball yet wave drop heart am present heavy
dance engine position arm wide sail material size vary settle speak weight
general ice matter circle pair include divide syllable felt perhaps pick
sudden count square reason length represent art subject region energy hunt
probable bed brother egg ride cell believe fraction forest sit race window
store summer train sleep prove lone leg exercise wall catch mount wish sky
board joy winter sat written wild instrument kept glass grass cow job edge
sign visit past soft fun bright gas weather month million bear finish happy
hope flower clothe strange gone jump baby eight village meet root buy raise
solve metal whether push seven paragraph third shall held hair describe
cook floor either result burn hill safe cat century consider type law bit
coast copy phrase silent tall sand soil roll temperature finger industry
value fight lie beat excite natural view sense ear else quite broke case
middle kill son lake moment scale loud spring observe child straight
consonant nation dictionary milk speed method organ pay age section dress
cloud surprise quiet stone tiny climb cool design poor lot experiment
bottom key iron single stick flat twenty skin smile crease hole trade
melody trip office receive row mouth exact symbol die least trouble shout
except wrote seed tone join suggest clean break lady yard rise bad blow
oil blood touch grew cent mix team wire cost lost brown wear garden equal
sent choose fell fit flow fair bank collect save control decimal gentle
woman captain practice separate difficult doctor please protect noon whose
locate ring character insect caught period indicate radio spoke atom human
history effect electric expect crop modern element hit student corner party
supply bone rail imagine provide agree thus capital chair danger fruit rich
thick soldier process operate guess necessary sharp wing create neighbor
wash bat rather crowd corn compare poem string bell depend meat rub tube
famous dollar stream fear sight thin triangle planet hurry chief colony
clock mine tie enter major fresh search send yellow gun allow print dead
spot desert suit current lift rose continue block chart hat sell success
subtract event particular deal swim term opposite wife shoe shoulder spread
arrange camp invent cotton born determine quart nine truck noise level
chance gather shop stretch throw shine property column molecule select
wrong gray repeat require broad prepare salt nose plural anger claim
continent oxygen sugar death pretty skill women season solution magnet
silver thank branch match suffix especially fig afraid huge sister steel
discuss forward similar guide experience score apple bought led pitch
coat mass card band rope slip win dream evening condition feed tool total
basic smell valley nor double seat arrive master track parent shore
division sheet substance favor connect post spend chord fat glad original
share station dad bread charge proper bar offer segment slave duck instant
market degree populate chick dear enemy reply drink occur support speech
nature range steam motion path liquid log meant quotient teeth shell neck
money worry win studio pupil terry
model data test report make system use service state provide control
support design result study method analysis application approach research
development information technology management performance project
evaluation structure function process network environment impact security
quality knowledge product review document requirement standard source
mission satellite space ocean climate soil forest water surface
temperature earth atmosphere energy instrument measurement station signal
sensor camera image map region area global model record archive center
agency team plan phase test launch orbit flight ground station power
communication science observation weather storm wind rain ice snow
mountain river lake sea coast island species plant animal bird fish
carbon gas air pollution waste plastic health food crop farm field
""".split()


def main() -> int:
    seen: dict[str, int] = {}
    rank = 0
    for word in WORDS:
        w = word.casefold()
        if w in seen:
            continue
        rank += 1
        seen[w] = max(300, int(6_000_000 / rank**1.05))
    lines = [f"N={N_TOKENS}"]
    lines += [f"{w}\t{c}" for w, c in seen.items()]
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{len(seen)} terms, N={N_TOKENS} -> {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
