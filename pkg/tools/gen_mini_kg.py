#!/usr/bin/env python3
"""Generate fixtures/mini_kg.tsv: the bundled space mini knowledge graph.

Run from the repo root:  python3 tools/gen_mini_kg.py
"""

from __future__ import annotations

import re
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "fixtures" / "mini_kg.tsv"


def slug(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


ROWS: list[tuple[str, str, list[str], str, list[str], str, list[tuple[str, str]]]] = []
# (id, primary lemma, aliases, entity_type, domains, gloss, relations)


def concept(
    name: str,
    aliases: list[str] | None = None,
    etype: str = "none",
    domains: list[str] | None = None,
    gloss: str = "",
    hypernym: str | None = None,
    cid: str | None = None,
):
    cid = cid or slug(name)
    rels = [("hypernym", hypernym)] if hypernym else []
    ROWS.append((cid, name, aliases or [], etype, domains or [], gloss, rels))
    return cid


# -- root vocabulary -------------------------------------------------------

concept("space mission", ["mission"], domains=["space_systems"],
        gloss="an organized spaceflight undertaking")
concept("spacecraft", ["space vehicle"], domains=["space_systems"])
concept("satellite", domains=["space_systems"])
concept("launch vehicle", ["launcher", "rocket"], domains=["launch"])
concept("instrument", domains=["instruments"])
concept("organization", domains=["organizations"])
concept("observatory", domains=["astronomy", "space_systems"], hypernym="spacecraft")
concept("constellation", domains=["space_systems"])

MISSIONS = [
    "ATHENA", "Rosetta", "ExoMars", "Gaia", "JUICE", "BepiColombo", "CHEOPS",
    "Euclid", "Hera", "Solar Orbiter", "Envisat", "Aeolus", "CryoSat", "SMOS",
    "Swarm", "EarthCARE", "Biomass", "FLEX", "Altius", "Vigil", "Ariel",
    "Comet Interceptor", "PLATO", "SMILE", "XMM-Newton", "Integral", "LISA",
    "Cluster", "Mars Express", "Venus Express", "Huygens", "Giotto", "Ulysses",
    "SOHO", "MarsFAST", "NG-CryoIRTel", "Sentinel-1", "Sentinel-2", "Sentinel-3",
    "Sentinel-5P", "Sentinel-6", "Proba-1", "Proba-2", "Proba-V", "Copernicus",
    "Galileo", "EGNOS", "Hubble", "Herschel", "Planck", "Lisa Pathfinder",
    "GOCE", "ERS-1", "ERS-2", "Meteosat", "MetOp", "MTG", "HydroGNSS",
    "TRUTHS", "Harmony",
]
for m in MISSIONS:
    concept(m, domains=["space_systems", "astronomy"] if m in (
        "ATHENA", "Gaia", "Euclid", "PLATO", "XMM-Newton", "Integral", "LISA",
        "Hubble", "Herschel", "Planck", "Ariel", "CHEOPS", "NG-CryoIRTel",
    ) else ["space_systems"], gloss=f"space mission {m}", hypernym="space-mission")

LAUNCHERS = [
    ("Ariane 5", []), ("Ariane 6", []), ("Vega-C", []), ("Soyuz", []),
    ("Falcon 9", []), ("Atlas V", []), ("Delta IV", []), ("Proton", []),
    ("Electron", []), ("Long March", []), ("H-IIA", []), ("Ariane 4", []),
]
for name, aliases in LAUNCHERS:
    concept(name, aliases, domains=["launch"], gloss=f"launch vehicle {name}",
            hypernym="launch-vehicle")
# Ambiguous: Vega the launcher vs Vega the star.
concept("Vega", domains=["launch"], gloss="European light launch vehicle",
        hypernym="launch-vehicle", cid="vega-launcher")
concept("Vega", domains=["astronomy"], gloss="bright star in Lyra", cid="vega-star")

INSTRUMENTS = [
    "spectrometer", "mass spectrometer", "tunable laser spectrometer",
    "magnetometer", "radiometer", "scatterometer", "altimeter",
    "interferometer", "star tracker", "reaction wheel", "solar array",
    "solar panel", "panoramic camera", "gyroscope", "thruster", "ion engine",
    "propellant tank", "heat shield", "parachute", "drill", "antenna",
    "high-gain antenna", "transponder", "battery", "camera", "telescope",
    "X-ray telescope", "mirror module", "cryocooler", "sunshield",
    "focal plane", "detector", "CCD", "bolometer", "radar", "lidar",
    "imaging radar", "synthetic aperture radar", "wide field imager",
    "spectrograph", "photometer", "seismometer", "accelerometer",
    "sun sensor", "horizon sensor", "laser retroreflector", "microphone",
    "dosimeter", "sample container", "robotic arm",
]
for name in INSTRUMENTS:
    concept(name, domains=["instruments"], hypernym="instrument")

SPACE_TERMS = [
    ("orbit", []), ("low Earth orbit", ["LEO"]), ("geostationary orbit", ["GEO"]),
    ("apogee", []), ("perigee", []), ("inclination", []), ("launch window", []),
    ("payload fairing", []), ("service module", []), ("ground segment", []),
    ("space segment", []), ("mission control", []), ("telemetry", []),
    ("telecommand", []), ("downlink", []), ("uplink", []), ("ground station", []),
    ("attitude control", []), ("orbit determination", []), ("trajectory", []),
    ("maneuver", []), ("rendezvous", []), ("docking", []), ("deorbit", []),
    ("reentry", []), ("launch campaign", []), ("countdown", []), ("liftoff", []),
    ("space debris", ["orbital debris"]), ("debris", []), ("collision avoidance", []),
    ("conjunction", []), ("deorbiting sail", []), ("drag sail", []),
    ("regolith", []), ("lunar regolith", []), ("habitat", []), ("airlock", []),
    ("lander", []), ("rover", []), ("orbiter", []), ("probe", []),
    ("cubesat", []), ("nanosatellite", []), ("smallsat", []),
    ("spacewalk", []), ("astronaut", []), ("cosmonaut", []),
    ("launch pad", []), ("spaceport", []), ("cleanroom", []),
    ("thermal control", []), ("power subsystem", []), ("propulsion", []),
    ("electric propulsion", []), ("chemical propulsion", []), ("solar sail", []),
    ("sintering", []), ("additive manufacturing", ["3D-printing", "3D printing"]),
    ("in-situ resource utilization", ["ISRU"]), ("radiation shielding", []),
    ("micrometeoroid", []), ("space weather", []), ("solar wind", []),
    ("cosmic ray", []), ("magnetosphere", []), ("ionosphere", []),
    ("exosphere", []), ("gravity assist", []), ("lagrange point", []),
    ("space station", []), ("space tug", []), ("capture net", []),
    ("harpoon", []), ("robotic servicing", []), ("end of life", ["EOL"]),
    ("sol", []), ("dust storm", []), ("crater", []), ("lava tube", []),
    ("X-ray", []), ("infrared", []), ("ultraviolet", []), ("microwave", []),
    ("wavelength", []), ("spectral band", []), ("swath", []),
    ("revisit time", []), ("spatial resolution", []), ("radiometric accuracy", []),
]
for name, aliases in SPACE_TERMS:
    concept(name, aliases, domains=["space_systems"])

ASTRO = [
    "galaxy", "black hole", "neutron star", "exoplanet", "asteroid", "comet",
    "meteorite", "supernova", "nebula", "pulsar", "quasar", "dark matter",
    "dark energy", "cosmology", "astrophysics", "stellar population",
    "accretion disk", "binary system", "gravitational wave", "redshift",
    "hot gas", "intergalactic medium", "star formation",
]
for name in ASTRO:
    concept(name, domains=["astronomy"])

PLANETS = [
    ("Mars", "place"), ("Moon", "place"), ("Venus", "place"), ("Jupiter", "place"),
    ("Saturn", "place"), ("Titan", "place"), ("Europa", "place"),
    ("Ganymede", "place"), ("Earth", "place"), ("Sun", "place"),
]
for name, etype in PLANETS:
    concept(name, etype=etype, domains=["astronomy", "geography"])
concept("Mercury", etype="place", domains=["astronomy"], gloss="innermost planet",
        cid="mercury-planet")
concept("mercury", domains=["earth_science", "environment"],
        gloss="toxic heavy metal element", cid="mercury-element")

EARTH_SCIENCE = [
    ("sea surface temperature", ["SST"]), ("ocean current", []), ("salinity", []),
    ("chlorophyll", []), ("phytoplankton", []), ("coral reef", []),
    ("ocean color", []), ("sea level rise", []), ("sea ice", []),
    ("glacier", []), ("ice sheet", []), ("permafrost", []), ("snow cover", []),
    ("soil moisture", []), ("soil sample", []), ("soil property", []),
    ("soil fertility", []), ("soil organic carbon", []), ("groundwater", []),
    ("groundwater sample", []), ("aquifer", []), ("watershed", []),
    ("precipitation", []), ("rainfall", []), ("drought", []), ("flood", []),
    ("hurricane", []), ("monsoon", []), ("cyclone", []), ("storm surge", []),
    ("climate", []), ("climate change", []), ("climate model", []),
    ("climate variability", []), ("climate record", []), ("global warming", []),
    ("greenhouse gas", []), ("carbon dioxide", ["CO2"]), ("methane", []),
    ("aerosol", []), ("ozone", []), ("atmosphere", []), ("troposphere", []),
    ("stratosphere", []), ("humidity", []), ("evapotranspiration", []),
    ("vegetation index", ["NDVI"]), ("land use", []), ("land cover", []),
    ("deforestation", []), ("reforestation", []), ("erosion", []),
    ("sediment", []), ("sedimentology", []), ("seismology", []),
    ("earthquake", []), ("volcano", []), ("volcanology", []), ("eruption", []),
    ("lava", []), ("ash plume", []), ("tectonics", []), ("geology", []),
    ("geophysics", []), ("geochemistry", []), ("oceanography", []),
    ("meteorology", []), ("climatology", []), ("hydrology", []),
    ("glaciology", []), ("paleoclimate", []), ("weather forecast", []),
    ("Earth observation", ["EO"]), ("remote sensing", []),
    ("El Nino", ["ENSO"]), ("ocean heat content", []), ("carbon cycle", []),
    ("water cycle", []), ("albedo", []), ("surface temperature", []),
    ("wind speed", []), ("wave height", []), ("tide", []),
]
for name, aliases in EARTH_SCIENCE:
    concept(name, aliases, domains=["earth_science"])

ENVIRONMENT = [
    ("ecosystem", []), ("ecosystem service", []), ("biodiversity", []),
    ("species richness", []), ("invasive species", []), ("habitat loss", []),
    ("conservation", []), ("wetland", []), ("forest", []), ("grassland", []),
    ("savanna", []), ("tundra", []), ("mangrove", []), ("peatland", []),
    ("pollution", []), ("air quality", []), ("water quality", []),
    ("plastic waste", []), ("marine litter", []), ("microplastic", []),
    ("oil spill", []), ("heavy metal", []), ("pesticide", []),
    ("nitrate", ["NO3"]), ("phosphate", []), ("nitrogen", []), ("phosphorus", []),
    ("crop yield", []), ("irrigation", []), ("agriculture", []),
    ("soil biology", []), ("soil chemistry", []), ("carbon sequestration", []),
    ("land degradation", []), ("desertification", []), ("wildfire", []),
    ("environmental monitoring", []), ("environmental impact", []),
    ("natural hazard", []), ("landslide", []), ("sustainability", []),
]
for name, aliases in ENVIRONMENT:
    concept(name, aliases, domains=["environment"])

DATA_TERMS = [
    ("algorithm", []), ("machine learning", ["ML"]),
    ("artificial intelligence", ["AI"]), ("neural network", []),
    ("deep learning", []), ("training data", []), ("dataset", []),
    ("data product", []), ("data archive", []), ("data preservation", []),
    ("metadata", []), ("data processing", []), ("data fusion", []),
    ("image classification", []), ("anomaly detection", []),
    ("pattern recognition", []), ("computer vision", []),
    ("natural language processing", ["NLP"]), ("knowledge graph", []),
    ("search engine", []), ("information retrieval", []),
    ("question answering", []), ("language model", []),
    ("optimization", []), ("simulation", []), ("digital twin", []),
    ("cloud computing", []), ("onboard processing", []), ("compression", []),
    ("quantum computer", []), ("quantum key distribution", ["QKD"]),
    ("quantum communication", []), ("entanglement", []), ("photon", []),
    ("cryptography", []), ("bandwidth", []), ("latency", []),
    ("calibration", []), ("validation", []), ("verification", []),
    ("model", []), ("data", []), ("software", []), ("hardware", []),
    ("sensor", []), ("network", []), ("database", []),
]
for name, aliases in DATA_TERMS:
    concept(name, aliases, domains=["data_systems"])
# Ambiguous: payload as spacecraft cargo vs payload as message body.
concept("payload", domains=["space_systems"],
        gloss="the mission-serving equipment carried by a spacecraft",
        cid="payload-spacecraft")
concept("payload", domains=["data_systems"],
        gloss="the content portion of a transmitted message",
        cid="payload-data")

OPS_BODIES = [
    ("anomaly review board", ["ARB"]), ("software review board", ["SRB"]),
    ("review board", []), ("configuration control board", ["CCB"]),
]
for name, aliases in OPS_BODIES:
    concept(name, aliases, etype="organization", domains=["operations", "quality"])

ROLES = [
    "quality manager", "project manager", "service manager",
    "operations engineer", "team leader", "configuration manager",
    "quality assurance expert", "knowledge engineer", "spacecraft operator",
]
for name in ROLES:
    concept(name, etype="person", domains=["operations", "people"])

OPS_QUALITY = [
    ("anomaly report", ["AR"]), ("problem report", ["PR"]),
    ("configuration management", []),
    ("configuration control", []), ("configuration item", []),
    ("configuration identification", []), ("baseline", []),
    ("living baseline", []), ("waiver", []), ("non-conformance", []),
    ("corrective action", []), ("preventive action", []), ("root cause", []),
    ("root cause identification", []), ("quality assurance", ["QA"]),
    ("quality management", []), ("audit", []), ("procedure", []),
    ("work instruction", []), ("traceability", []), ("acceptance test", []),
    ("acceptance review", []), ("risk assessment", []), ("risk register", []),
    ("mitigation", []), ("work order", []), ("change request", []),
    ("action item", []), ("lessons learned", []), ("closure", []),
    ("spacecraft log", []), ("operations team", []), ("flight director", []),
    ("ground operations", []), ("training session", []), ("trainee", []),
    ("trainer", []), ("quiz", []), ("checklist", []), ("severity", []),
    ("customer furnished item", ["CFI"]), ("supplier", []), ("contractor", []),
    ("milestone", []), ("deliverable", []), ("requirement", []),
    ("specification", []), ("design review", []), ("test campaign", []),
]
for name, aliases in OPS_QUALITY:
    concept(name, aliases, domains=["operations", "quality"])

ORGS = [
    ("European Space Agency", ["ESA"]),
    ("NASA", []),
    ("JAXA", []),
    ("Roscosmos", []),
    ("CNES", []),
    ("DLR", []),
    ("ASI", []),
    ("UK Space Agency", ["UKSA"]),
    ("European Commission", ["EC"]),
    ("European Union", ["EU"]),
    ("World Health Organization", ["WHO"]),
    ("Intergovernmental Panel on Climate Change", ["IPCC"]),
    ("International Union for Conservation of Nature", ["IUCN"]),
    ("ECMWF", []),
    ("EUMETSAT", []),
    ("Airbus", []),
    ("Thales Alenia Space", []),
    ("OHB", []),
    ("SpaceX", []),
    ("Arianespace", []),
    ("Concurrent Design Facility", ["CDF"]),
    ("Open Space Innovation Platform", ["OSIP"]),
    ("United Nations", ["UN"]),
    ("NOAA", []),
    ("USGS", []),
    ("Copernicus programme", []),
]
for name, aliases in ORGS:
    concept(name, aliases, etype="organization", domains=["organizations"])

PLACES = [
    "Kourou", "Noordwijk", "Darmstadt", "Frascati", "Cologne", "Paris",
    "Madrid", "Rome", "Toulouse", "Oberpfaffenhofen", "Harwell", "Redu",
    "Tanegashima Space Centre", "Baikonur", "Cape Canaveral", "Vandenberg",
    "Kennedy Space Center", "French Guiana", "Japan", "China", "India",
    "Brazil", "Iran", "Italy", "France", "Germany", "Spain", "Netherlands",
    "Europe", "United States of America", "Atlantic Ocean", "Pacific Ocean",
    "Indian Ocean", "Mediterranean Sea", "North Sea", "Baltic Sea",
    "Amazon basin", "Sahara", "Antarctica", "Greenland", "Arctic", "Alps",
    "Himalaya", "Iceland", "Mount Etna", "Svalbard", "Siberia", "Australia",
    "Canada", "Norway",
]
for name in PLACES:
    concept(name, etype="place", domains=["geography"])

PEOPLE = [
    "Kepler", "Newton", "Copernicus Nicolaus", "Rossby", "Linnaeus",
    "Shannon", "Gauss", "Euler", "Curie", "Darwin", "Humboldt", "Tsiolkovsky",
    "Galileo Galilei", "Cassini", "Lagrange", "Hohmann",
]
for name in PEOPLE:
    concept(name, etype="person", domains=["people"])

MATERIALS = [
    "silicon carbide", "carbon fibre", "aluminium", "titanium", "composite",
    "ceramic", "adhesive", "coating", "insulation", "multilayer insulation",
    "kapton", "graphene", "alloy", "basalt", "concrete", "brick", "epoxy",
]
for name in MATERIALS:
    concept(name, domains=["materials"])

ROBOTICS = [
    "robot", "autonomy", "navigation", "path planning", "obstacle avoidance",
    "manipulation", "gripper", "wheel", "locomotion", "teleoperation",
    "swarm robotics", "cave exploration", "subsurface exploration",
    "mapping", "localization", "slam",
]
for name in ROBOTICS:
    concept(name, domains=["robotics"])

# Synonym pair exercised by tests (symmetry repair).
ROWS.append(("spacecraft-bus", "spacecraft bus", ["platform bus"], "none",
             ["space_systems"], "structural core of a satellite",
             [("synonym", "service-module")]))


def main() -> int:
    ids = [r[0] for r in ROWS]
    dupes = {i for i in ids if ids.count(i) > 1}
    if dupes:
        print(f"duplicate ids: {sorted(dupes)}", file=sys.stderr)
        return 1
    id_set = set(ids)
    lines = []
    for cid, name, aliases, etype, domains, gloss, rels in ROWS:
        lemmas = "|".join([name] + aliases)
        lines.append(
            f"concept\t{cid}\t{lemmas}\t{etype or 'none'}\t{'|'.join(domains)}\t{gloss}"
        )
    for cid, _, _, _, _, _, rels in ROWS:
        for kind, target in rels:
            if target not in id_set:
                print(f"{cid}: dangling relation target {target}", file=sys.stderr)
                return 1
            lines.append(f"rel\t{kind}\t{cid}\t{target}")
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{len(ROWS)} concepts -> {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
