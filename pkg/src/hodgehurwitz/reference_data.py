"""Frozen reference values for the verification suite.

``HODGE_REFERENCE`` lists exact linear Hodge integrals as rows
(g, indices, j, value) with value = <tau_{n_1}..tau_{n_ell} lambda_j>,
where j is forced by the dimension constraint.  ``HURWITZ_REFERENCE``
lists simple Hurwitz numbers (g, mu, value).  All values are exact
rationals in string form; the tests require every pipeline to
reproduce each entry bit for bit.
"""

# (g, indices, j, value)
HODGE_REFERENCE: tuple = (
    # genus 2
    (2, (3,), 1, "1/480"),
    (2, (2, 2), 1, "5/576"),
    # genus 3, one marked point
    (3, (6,), 1, "7/138240"),
    (3, (5,), 2, "41/580608"),
    # genus 3, two marked points
    (3, (5, 2), 1, "323/483840"),
    (3, (4, 2), 2, "2329/2903040"),
    (3, (4, 3), 1, "19/17920"),
    (3, (3, 3), 2, "1501/1451520"),
    # genus 3, three and four marked points
    (3, (4, 2, 2), 1, "541/60480"),
    (3, (3, 3, 2), 1, "89/7680"),
    (3, (3, 2, 2), 2, "859/96768"),
    (3, (3, 2, 2, 2), 1, "395/3456"),
    (3, (2, 2, 2, 2), 2, "17/192"),
    # genus 4, one marked point
    (4, (9,), 1, "1/1244160"),
    (4, (8,), 2, "1357/696729600"),
    (4, (7,), 3, "13/6220800"),
    # genus 4, two marked points
    (4, (8, 2), 1, "841/38707200"),
    (4, (7, 2), 2, "33391/696729600"),
    (4, (5, 3), 3, "2609/29030400"),
    (4, (7, 3), 1, "221/4147200"),
    (4, (6, 3), 2, "1153/11059200"),
    (4, (4, 4), 3, "6421/58060800"),
    (4, (6, 4), 1, "517/5806080"),
    (4, (5, 4), 2, "979/6451200"),
    (4, (5, 5), 1, "1223/11612160"),
    (4, (6, 2), 3, "5477/116121600"),
    # genus 4, three marked points
    (4, (7, 2, 2), 1, "3487/5806080"),
    (4, (4, 4, 3), 1, "137/46080"),
    (4, (4, 3, 3), 2, "58951/16588800"),
    (4, (6, 3, 2), 1, "50243/38707200"),
    (4, (6, 2, 2), 2, "137843/116121600"),
    (4, (5, 2, 2), 3, "241/230400"),
    (4, (5, 4, 2), 1, "2597/1382400"),
    (4, (5, 3, 2), 2, "577/258048"),
    (4, (4, 3, 2), 3, "27821/16588800"),
    (4, (5, 3, 3), 1, "3359/1382400"),
    (4, (4, 4, 2), 2, "2657/967680"),
    (4, (3, 3, 3), 3, "4531/2073600"),
    # genus 5, one marked point
    (5, (12,), 1, "1/106168320"),
    (5, (11,), 2, "577/16721510400"),
    (5, (10,), 3, "71/1114767360"),
    (5, (9,), 4, "21481/367873228800"),
)

# (g, mu, value)
HURWITZ_REFERENCE: tuple = (
    (1, (1,), "0"), (2, (1,), "0"), (3, (1,), "0"), (4, (1,), "0"),
    (1, (2,), "1/2"), (2, (2,), "1/2"), (3, (2,), "1/2"), (4, (2,), "1/2"),
    (1, (1, 1), "1/2"), (2, (1, 1), "1/2"),
    (3, (1, 1), "1/2"), (4, (1, 1), "1/2"),
    (1, (3,), "9"), (2, (3,), "81"), (3, (3,), "729"), (4, (3,), "6561"),
    (1, (2, 1), "40"), (2, (2, 1), "364"),
    (3, (2, 1), "3280"), (4, (2, 1), "29524"),
    (1, (1, 1, 1), "40"), (2, (1, 1, 1), "364"),
    (3, (1, 1, 1), "3280"), (4, (1, 1, 1), "29524"),
    (1, (4,), "160"), (2, (4,), "5824"),
    (3, (4,), "209920"), (4, (4,), "7558144"),
    (1, (3, 1), "1215"), (2, (3, 1), "45927"),
    (3, (3, 1), "1673055"), (4, (3, 1), "60407127"),
    (1, (2, 2), "480"), (2, (2, 2), "17472"),
    (3, (2, 2), "629760"), (4, (2, 2), "22674432"),
    (1, (2, 1, 1), "5460"), (2, (2, 1, 1), "206640"),
    (3, (2, 1, 1), "7528620"), (4, (2, 1, 1), "271831560"),
    (1, (1, 1, 1, 1), "5460"), (2, (1, 1, 1, 1), "206640"),
    (3, (1, 1, 1, 1), "7528620"),
    (1, (5,), "3125"), (2, (5,), "328125"),
    (3, (5,), "33203125"), (4, (5,), "3330078125"),
    (1, (4, 1), "35840"), (2, (4, 1), "3956736"),
    (3, (4, 1), "409108480"), (4, (4, 1), "41394569216"),
    (1, (3, 2), "26460"), (2, (3, 2), "2748816"),
    (3, (3, 2), "277118820"), (4, (3, 2), "27762350616"),
    (1, (3, 1, 1), "234360"), (2, (3, 1, 1), "26184060"),
    (3, (3, 1, 1), "2719617120"), (4, (3, 1, 1), "275661886500"),
    (1, (2, 2, 1), "188160"), (2, (2, 2, 1), "20160000"),
    (3, (2, 2, 1), "2059960320"), (4, (2, 2, 1), "207505858560"),
    (1, (2, 1, 1, 1), "1189440"), (2, (2, 1, 1, 1), "131670000"),
    (3, (2, 1, 1, 1), "13626893280"),
    (1, (1, 1, 1, 1, 1), "1189440"), (2, (1, 1, 1, 1, 1), "131670000"),
    (1, (6,), "68040"), (2, (6,), "16901136"),
    (3, (6,), "3931876080"), (4, (6,), "895132294056"),
    (1, (5, 1), "1093750"), (2, (5, 1), "287109375"),
    (3, (5, 1), "68750000000"), (4, (5, 1), "15885009765625"),
    (1, (4, 2), "788480"), (2, (4, 2), "192783360"),
    (3, (4, 2), "44490434560"), (4, (4, 2), "10093234511360"),
    (1, (4, 1, 1), "9838080"), (2, (4, 1, 1), "2638056960"),
    (3, (4, 1, 1), "638265788160"), (4, (4, 1, 1), "148222087453440"),
    (1, (3, 3), "357210"), (2, (3, 3), "86113125"),
    (3, (3, 3), "19797948720"), (4, (3, 3), "4487187539835"),
    (1, (3, 2, 1), "14696640"), (2, (3, 2, 1), "3710765520"),
    (3, (3, 2, 1), "872470478880"), (4, (3, 2, 1), "199914163328880"),
    (1, (3, 1, 1, 1), "65998800"), (2, (3, 1, 1, 1), "17634743280"),
    (3, (3, 1, 1, 1), "4259736280800"),
    (1, (2, 2, 2), "2016000"), (2, (2, 2, 2), "486541440"),
    (3, (2, 2, 2), "111644332800"), (4, (2, 2, 2), "25269270586560"),
    (1, (2, 2, 1, 1), "80438400"), (2, (2, 2, 1, 1), "20589085440"),
    (3, (2, 2, 1, 1), "4874762692800"),
    (1, (2, 1, 1, 1, 1), "382536000"), (2, (2, 1, 1, 1, 1), "100557737280"),
    (1, (1, 1, 1, 1, 1, 1), "382536000"),
)

# (g, mu, value): one-part profiles at genus five
HURWITZ_GENUS_FIVE: tuple = (
    (5, (1,), "0"),
    (5, (2,), "1/2"),
    (5, (3,), "59049"),
    (5, (4,), "272097280"),
    (5, (5,), "333251953125"),
    (5, (6,), "202252053177720"),
)
