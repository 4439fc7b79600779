"""Published relations and polynomials, transcribed as data.

These are the targets that the derivation, elimination and root-finding
code must reproduce.  Coefficients are written as polynomial expressions in
``n`` (the norm of ``alpha``), ``t`` (the cutoff index of ``E`` on ``u``) and,
for the lowest-weight family, ``w`` standing for the left symbol ``omega_1``.

A term is ``(coefficient, left, shift, right)`` and denotes
``coefficient * left E_{t+shift} right u`` with ``left`` a tuple of
``(letter, exponent)`` pairs and ``right`` a tuple of letters; a letter is
``(field, mode)`` with field ``"omega"`` or ``"H"``.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .polyq import PolyQ

Term = Tuple[str, tuple, int, tuple]

# -- terminal setting: omega_2 u and H_4 u are multiples of the vacuum -------------

TERMINAL_Q4 = (
    ('-(t + 1)^2*((16*n + 3)*t^2 + (-16*n^2 + 36*n + 12)*t + 4*n^3 - 18*n^2 + 14*n + 12)',
     (), 0, ()),
    ('2*((20*n^2 - 8*n + 6)*t^2 + (-16*n^3 + 44*n^2 - 10*n + 12)*t + 4*n^4 - 18*n^3 + 18*n^2 + n + 6)',
     (), 0, (('omega', 1),)),
    ('2*((20*n^2 - 8*n + 6)*t^2 + (-28*n^3 + 28*n^2 + 25*n - 3)*t + 20*n^4 - 70*n^3 + 42*n^2 + 6*n)',
     (), -1, (('omega', 2),)),
    ('-4*n*(n - 2)*(4*n - 3)',
     (), 0, (('omega', 1), ('omega', 1))),
    ('-8*n*(n - 2)*(4*n - 3)',
     (), -1, (('omega', 1), ('omega', 2))),
    ('-2*n*(n - 2)*(2*n - 9)*(2*n - 1)',
     (), 0, (('H', 3),)),
    ('-2*n*(n - 2)*(2*n - 9)*(2*n - 1)',
     (), -1, (('H', 4),)),
)

TERMINAL_Q51 = (
    ('2*(t + 1)^2*((8*n - 9)*t^3 + (72*n^2 + 44*n - 45)*t^2 + (-78*n^3 + 166*n^2 + 115*n - 78)*t + 20*n^4 - 88*n^3 + 52*n^2 + 112*n - 48)',
     (), 0, ()),
    ('-4*((102*n^3 - 64*n^2 + 43*n - 12)*t^2 + (-78*n^4 + 226*n^3 - 77*n^2 + 71*n - 24)*t + 20*n^5 - 88*n^4 + 82*n^3 + 20*n^2 + 22*n - 12)',
     (), 0, (('omega', 1),)),
    ('-2*((202*n^3 - 96*n^2 + 57*n - 36)*t^2 + (-240*n^4 + 134*n^3 + 560*n^2 - 295*n + 12)*t + 220*n^5 - 818*n^4 + 558*n^3 + 117*n^2 - 102*n)',
     (), -1, (('omega', 2),)),
    ('-8*n*((8*n^2 - 9*n)*t - 30*n^3 + 92*n^2 - 70*n + 12)',
     (), 0, (('omega', 1), ('omega', 1))),
    ('-4*n*((32*n^2 - 36*n)*t - 150*n^3 + 420*n^2 - 305*n + 60)',
     (), -1, (('omega', 1), ('omega', 2))),
    ('4*(n - 2)*(2*n - 1)*((6*n^2 - 5*n + 6)*t + 10*n^3 - 54*n^2 + 10*n + 6)',
     (), 0, (('H', 3),)),
    ('(n - 2)*(2*n - 1)*((24*n^2 - 20*n + 24)*t + 50*n^3 - 300*n^2 + 75*n)',
     (), -1, (('H', 4),)),
)

TERMINAL_Q6 = (
    ('-30*(t + 1)^2*((12*n^2 - 27*n + 6)*t^4 + (228*n^2 - 513*n + 114)*t^3 + (704*n^5 - 569*n^4 + 994*n^3 + 335*n^2 - 2316*n + 501)*t^2 + (-704*n^6 + 2246*n^5 - 2098*n^4 + 2602*n^3 + 1314*n^2 - 4422*n + 864)*t + 176*n^7 - 932*n^6 + 1496*n^5 - 1175*n^4 + 410*n^3 + 2656*n^2 - 3198*n + 540)',
     (), 0, ()),
    ('-60*((176*n^5 - 455*n^4 + 514*n^3 - 349*n^2 + 276*n - 45)*t^3 + (-1056*n^6 + 2355*n^5 - 4527*n^4 + 4854*n^3 - 2877*n^2 + 1791*n - 270)*t^2 + (704*n^7 - 2950*n^6 + 5142*n^5 - 8303*n^4 + 6886*n^3 - 3486*n^2 + 2574*n - 405)*t - 176*n^8 + 932*n^7 - 1848*n^6 + 2609*n^5 - 3033*n^4 + 1085*n^3 - 352*n^2 + 990*n - 180)',
     (), 0, (('omega', 1),)),
    ('-6*((2112*n^5 - 5649*n^4 + 5826*n^3 - 4179*n^2 + 3564*n - 675)*t^3 + (-11792*n^6 + 21956*n^5 - 34675*n^4 + 31030*n^3 - 11613*n^2 + 10944*n - 2025)*t^2 + (10384*n^7 - 18258*n^6 + 8401*n^5 + 8859*n^4 - 76550*n^3 + 86952*n^2 - 19887*n + 900)*t - 10560*n^8 + 50640*n^7 - 91020*n^6 + 126690*n^5 - 114150*n^4 + 22110*n^3 + 21600*n^2 - 4770*n)',
     (), -1, (('omega', 2),)),
    ('120*n*((176*n^5 - 455*n^4 + 694*n^3 - 754*n^2 + 366*n - 45)*t - 352*n^6 + 1434*n^5 - 2623*n^4 + 3729*n^3 - 3523*n^2 + 1524*n - 180)',
     (), 0, (('omega', 1), ('omega', 1))),
    ('12*n*((3872*n^5 - 10559*n^4 + 16276*n^3 - 17974*n^2 + 8574*n - 1125)*t - 10032*n^6 + 36036*n^5 - 61980*n^4 + 88110*n^3 - 81438*n^2 + 34164*n - 4050)',
     (), -1, (('omega', 1), ('omega', 2))),
    ('720*n^3*(n - 2)*(4*n - 1)',
     (), 0, (('omega', 1), ('omega', 1), ('omega', 1))),
    ('2160*n^3*(n - 2)*(4*n - 1)',
     (), -1, (('omega', 1), ('omega', 1), ('omega', 2))),
    ('-6*(n - 2)*(2*n - 1)*((880*n^5 - 190*n^4 + 800*n^3 - 1580*n^2 + 1800*n - 450)*t + 880*n^6 - 6596*n^5 + 9372*n^4 - 14533*n^3 + 11462*n^2 - 72*n - 450)',
     (), 0, (('H', 3),)),
    ('-24*n*(n - 2)*(2*n - 1)*(44*n^4 - 98*n^3 + 157*n^2 - 88*n + 48)',
     (), 0, (('H', 3), ('omega', 1))),
    ('-24*n*(n - 2)*(2*n - 1)*(44*n^4 - 98*n^3 + 157*n^2 - 88*n + 48)',
     (), -1, (('H', 3), ('omega', 2))),
    ('-3*(n - 2)*(2*n - 1)*((2112*n^5 - 279*n^4 + 1686*n^3 - 3774*n^2 + 4404*n - 1125)*t + 2640*n^6 - 22780*n^5 + 29470*n^4 - 47255*n^3 + 39830*n^2 - 6000*n)',
     (), -1, (('H', 4),)),
    ('-24*n*(n - 2)*(2*n - 1)*(44*n^4 - 98*n^3 + 157*n^2 - 88*n + 48)',
     (), -1, (('H', 4), ('omega', 1))),
)

TERMINAL: Dict[str, Tuple[Tuple[str, int], Tuple[Term, ...]]] = {
    "Q4": (("Q4", 4), TERMINAL_Q4),
    "Q51": (("Q51", 5), TERMINAL_Q51),
    "Q6": (("Q6", 6), TERMINAL_Q6),
}

# -- lowest-weight setting: omega_k u = 0 (k >= 2), H_k u = 0 (k >= 4) ---------------
# The common factor ((t+1-n)^2 - 2n omega_1) is kept unexpanded.

LOWEST_Q4 = (
    ('((t + 1 - n)^2 - 2*n*w)*(-(n - 2)*(n - 2*w)*(4*n - 3) + 2*n*(8*n - 11)*t - (16*n + 3)*t^2)',
     (), 0, ()),
    ('-2*n*(n - 2)*(2*n - 9)*(2*n - 1)',
     ((('H', 3), 1),), 0, ()),
)

LOWEST_Q51 = (
    ('((t + 1 - n)^2 - 2*n*w)*(2*(n - 2)*(n - 2*w)*(15*n^2 - 16*n + 3) - (118*n^3 + (-16*w - 193)*n^2 + (18*w + 35)*n + 6)*t + (112*n^2 + 6*n - 21)*t^2 + (8*n - 9)*t^3)',
     (), 0, ()),
    ('2*(n - 2)*(2*n - 1)*((6*n^2 - 5*n + 6)*t + 10*n^3 - 54*n^2 + 10*n + 6)',
     ((('H', 3), 1),), 0, ()),
)

LOWEST_Q52 = (
    ('((t + 1 - n)^2 - 2*n*w)*((n - 2)*(n - 2*w)*(72*n^3 + 44*n^2 - 235*n + 120) - (284*n^4 + (-40*w - 3)*n^3 + (6*w - 1120)*n^2 + (88*w + 754)*n - 48*w + 60)*t + (272*n^3 + 410*n^2 - 363*n - 270)*t^2 + (16*n^2 + 61*n - 102)*t^3)',
     (), 0, ()),
    ('2*(n - 2)*(2*n - 1)*((14*n^3 + 21*n^2 - 74*n + 60)*t + 24*n^4 - 90*n^3 - 221*n^2 + 220*n + 60)',
     ((('H', 3), 1),), 0, ()),
)

LOWEST_Q6 = (
    ('((t + 1 - n)^2 - 2*n*w)*(-3*(n - 2)*(n - 2*w)*(616*n^5 - 1262*n^4 + (-40*w + 1958)*n^3 + (10*w - 2397)*n^2 + 1232*n - 150) + 3*(2464*n^6 + (-704*w - 6537)*n^5 + (1618*w + 9700)*n^4 + (-2452*w - 12590)*n^3 + (2848*w + 7496)*n^2 + (-1388*w - 623)*n + 150*w - 90)*t - 3*(2464*n^5 - 2793*n^4 + (40*w + 4907)*n^3 + (-90*w - 3483)*n^2 + (20*w - 1252)*n + 385)*t^2 - 15*(n - 2)*(2*n + 19)*(4*n - 1)*t^3 - 15*(n - 2)*(4*n - 1)*t^4)',
     (), 0, ()),
    ('-(n - 2)*(2*n - 1)*((1056*n^5 - 582*n^4 + 1428*n^3 - 1932*n^2 + 1992*n - 450)*t + 792*n^6 + (176*w - 6224)*n^5 + (-392*w + 8666)*n^4 + (628*w - 13729)*n^3 + (-352*w + 11014)*n^2 + (192*w + 120)*n - 450)',
     ((('H', 3), 1),), 0, ()),
)

LOWEST: Dict[str, Tuple[Tuple[str, int], Tuple[Term, ...]]] = {
    "Q4": (("Q4", 4), LOWEST_Q4),
    "Q51": (("Q51", 5), LOWEST_Q51),
    "Q52": (("Q52", 5), LOWEST_Q52),
    "Q6": (("Q6", 6), LOWEST_Q6),
}

# The lowest-weight eliminant (coefficient of E_t u, with w = omega_1).
LOWEST_ELIMINANT = 'n^2*(2*n - 9)*(2*n - 1)*(4*n^2 - 12*n + 15)*(10*n^2 - 4*n + 3)*(44*n^4 - 13*n^3 + 62*n^2 - 48*n + 18)*t*(t - n + 2)*(2*t - n + 1)*(2*t - n + 2)*(2*t - n + 3)*((t + 1 - n)^2 - 2*n*w)'

# Roots in t of the lowest-weight eliminant that survive for generic n.
LOWEST_T_FACTOR = 't*(t - n + 2)*(2*t - n + 1)*(2*t - n + 2)*(2*t - n + 3)'

# -- elimination in the terminal setting --------------------------------------------

# After omega_1 u = H_3 u = u, H_4 u = 0 and dropping E_{t-1} omega_2 u terms.
ELIMINATED_1 = (
        't^2*(10*n^2 - 4*n + 3)*((32*n - 36)*t^5 + (-80*n^2 + 281*n - 198)*t^4 + (24*n^3'
        ' - 376*n^2 + 783*n - 378)*t^3 + (-12*n^4 + 176*n^3 - 673*n^2 + 887*n - 294)*t^2'
        ' + (24*n^5 + 16*n^4 - 370*n^3 + 660*n^2 - 367*n + 78)*t - 8*n^6 - 40*n^5 + 498*n^4'
        ' - 1424*n^3 + 1697*n^2 - 864*n + 156)'
    )

ELIMINATED_2 = (
        't^2*((2400*n^4 - 6360*n^3 + 4080*n^2 - 2100*n + 360)*t^6 + (33792*n^6 - 87408*n^5'
        ' + 137589*n^4 - 189186*n^3 + 124737*n^2 - 41898*n + 5355)*t^5 + (-81664*n^7'
        ' + 382200*n^6 - 726064*n^5 + 1055205*n^4 - 1153306*n^3 + 669765*n^2 - 193386*n'
        ' + 22095)*t^4 + (25344*n^8 - 412844*n^7 + 1292964*n^6 - 2146889*n^5 + 2965056*n^4'
        ' - 2780396*n^3 + 1427091*n^2 - 369111*n + 39375)*t^3 + (-9152*n^9 + 180504*n^8'
        ' - 874824*n^7 + 1952142*n^6 - 2951142*n^5 + 3684897*n^4 - 2957890*n^3 + 1327089*n^2'
        ' - 306300*n + 30465)*t^2 + (20416*n^10 + 4648*n^9 - 377744*n^8 + 1165462*n^7'
        ' - 2048798*n^6 + 2665009*n^5 - 2403075*n^4 + 1390194*n^3 - 493932*n^2 + 103029*n'
        ' - 9630)*t - 7040*n^11 - 36640*n^10 + 546080*n^9 - 2091064*n^8 + 4414496*n^7'
        ' - 6655612*n^6 + 7729798*n^5 - 6378462*n^4 + 3419178*n^3 - 1123344*n^2 + 210006*n'
        ' - 17820)'
    )

G1 = (
        '720896*n^8 - 6533120*n^7 + 12732160*n^6 - 11571376*n^5 + 8753247*n^4 - 6117402*n^3'
        ' + 2934828*n^2 - 718146*n + 40095'
    )

G2 = (
        '30976*n^10 - 93632*n^9 - 274896*n^8 + 676496*n^7 + 70580*n^6 - 1376964*n^5'
        ' + 1569114*n^4 - 766098*n^3 + 138753*n^2 + 14580*n - 6561'
    )

G3 = (
        '32480690176*n^17 - 686708228096*n^16 + 4100113563648*n^15 - 9261356843008*n^14'
        ' + 4721613180928*n^13 + 27252555600512*n^12 - 89074476796752*n^11'
        ' + 153500461862476*n^10 - 188119215355208*n^9 + 182750873232189*n^8'
        ' - 146333976903441*n^7 + 95994434529360*n^6 - 50207935079160*n^5'
        ' + 20230310418021*n^4 - 6034639211379*n^3 + 1264660375698*n^2 - 169751870910*n'
        ' + 11394160650'
    )

G4 = (
        '108295298266169344*n^28 - 1578632220535422976*n^27 + 9311723577440993280*n^26'
        ' - 30020826118265765888*n^25 + 56480859583533809664*n^24 - 34201181968036986880*n^23'
        ' - 166134072751850102784*n^22 + 653988138655346800640*n^21'
        ' - 1269321655065859079168*n^20 + 1420723402232025004160*n^19'
        ' - 291714635577902883936*n^18 - 2582683778801669449520*n^17'
        ' + 6770894754722207547920*n^16 - 10944187113221235636592*n^15'
        ' + 13555805386036866935018*n^14 - 13737333902075174510823*n^13'
        ' + 11720517307272109891506*n^12 - 8535382247957070808665*n^11'
        ' + 5336352269983480520232*n^10 - 2867703024491554846995*n^9'
        ' + 1322914878412254530550*n^8 - 522431105033231973729*n^7'
        ' + 175773803489479604430*n^6 - 49918422180208562604*n^5 + 11741259740661392544*n^4'
        ' - 2205270148985139708*n^3 + 309462836760861120*n^2 - 28630525595816700*n'
        ' + 1296455338665000'
    )

G5 = (
        '125419598061634584576*n^38 - 4058775327682313846784*n^37'
        ' + 61364532083457777467392*n^36 - 582936719229084397731840*n^35'
        ' + 3943379872911033271844864*n^34 - 20371782223780152285790208*n^33'
        ' + 83996702697827014071894016*n^32 - 284517625089600742756231168*n^31'
        ' + 805663391079536900830277632*n^30 - 1920640734900916387237049344*n^29'
        ' + 3836954501857572677445864064*n^28 - 6271979192897114647393521856*n^27'
        ' + 7760578552733394021465806368*n^26 - 4960446924702123953479190320*n^25'
        ' - 7465071488664393767860076264*n^24 + 35708801005589262962946399572*n^23'
        ' - 84222727411601389378170057962*n^22 + 152434039009084653430665673211*n^21'
        ' - 232437295292831894456601157082*n^20 + 309491421641544381910932790025*n^19'
        ' - 366054612786171099332876352444*n^18 + 388035250642103571764606350307*n^17'
        ' - 370337448344968087579269096586*n^16 + 318820688670520334196524737033*n^15'
        ' - 247602958017955809443453495754*n^14 + 173233782350652213882420588060*n^13'
        ' - 108885985952016051266803373628*n^12 + 61222945466874004618327931304*n^11'
        ' - 30611663342976087375389167464*n^10 + 13506540937664381785106978544*n^9'
        ' - 5208033211875215795239060032*n^8 + 1733872407863047422573508704*n^7'
        ' - 490817666374303669993349712*n^6 + 115795112960087840103771888*n^5'
        ' - 22152274459759464382843776*n^4 + 3301481575103941278100080*n^3'
        ' - 359562883864819986252000*n^2 + 25437319335136373184000*n - 875923032140153280000'
    )

G_POLYS = (G1, G2, G3, G4, G5)

# The eliminant of ELIMINATED_1 and ELIMINATED_2 divides this product.
ELIMINANT_PREFIX = "t^2*n*(n - 2)*(2*n - 1)*(8*n - 9)"

# Value of the first terminal relation at t = 0: coefficient of E_{-1} omega_2 u.
TERMINAL_AT_ZERO = "n*(10*n^3 - 35*n^2 + 21*n + 3)"

# Admissible cutoff indices left by the lowest-weight eliminant.
CONSTRAINED_T = ("0", "n/2 - 1", "n - 2")


def poly(text: str) -> PolyQ:
    return PolyQ.parse(text)


def eliminant_product() -> PolyQ:
    out = poly(ELIMINANT_PREFIX)
    for g in G_POLYS:
        out = out * poly(g)
    return out


# -- brackets with omega_{m+1} in rank one -------------------------------------------
# name -> (outer letters applied as nested brackets, innermost first; right-hand side)
# right-hand side terms: (coefficient in m, field, index in m)

COMMUTATOR_FORMULAS = {
    "H3": ((("H", "3"),), (
        ("-3*m", "H", "m+3"),
        ("-m^2*(m+1)/2", "omega", "m+1"),
    )),
    "H3H3": ((("H", "3"), ("H", "3")), (
        ("9*m^2", "H6", "m+5"),
        ("3*m^3*(5*m+9)/4", "H", "m+3"),
        ("m^3*(3*m^3+7*m^2+3*m-3)/10", "omega", "m+1"),
    )),
    "H6_5": ((("H6", "5"),), (
        ("-5*m", "H6", "m+5"),
        ("-15*m^2*(m+1)/4", "H", "m+3"),
        ("-m^2*(m+1)*(2*m^2+2*m-1)/6", "omega", "m+1"),
    )),
    "H4": ((("H", "4"),), (
        ("-(3*m-1)", "H", "m+4"),
        ("-m*(m+1)*(3*m+1)/6", "omega", "m+2"),
    )),
}

# omega_{m+1} = sum coeff * bracket, with the coefficients as printed (powers of 1/m)
RECONSTRUCTION = (("-5/m^3", "H3"), ("5/m^6", "H3H3"), ("9/m^5", "H6_5"))
