"""Frozen bitmap glyph tables for the embedded font.

Generated by tools/gen_font_tables.py from DejaVu Sans Mono 15 px;
do not edit by hand.  Each glyph is 18 rows of 9 pixels, one row
packed per 3 hex digits, most significant bit leftmost."""

CELL_W = 9
CELL_H = 18

ASCII = {
    0x0020: "000000000000000000000000000000000000000000000000000000",
    0x0021: "000000000010010010010010010010000000010010000000000000",
    0x0022: "00000000006c06c06c06c000000000000000000000000000000000",
    0x0023: "0000000000120360340ff02406c06c1fe0480d80d8000000000000",
    0x0024: "00000001001003c0560d00d007801c0160120d607c010010000000",
    0x0025: "0000000000e01b01101b00e60380ce01b01101b00e000000000000",
    0x0026: "00000000007c0400400600700b319b18f1860c607b000000000000",
    0x0027: "000000000010010010010000000000000000000000000000000000",
    0x0028: "000000000008018010030030030030030030030010018008000000",
    0x0029: "000000000020030010018018018018018018018010030020000000",
    0x002A: "0000000000100d60380380d6010000000000000000000000000000",
    0x002B: "0000000000000000000100100100ff010010010000000000000000",
    0x002C: "000000000000000000000000000000000000018038030020000000",
    0x002D: "00000000000000000000000000007c000000000000000000000000",
    0x002E: "000000000000000000000000000000000000038038000000000000",
    0x002F: "00000000000600400c0080180100300200600400c00c0000000000",
    0x0030: "00000000003806c0c60c60d60d60c60c60c606c038000000000000",
    0x0031: "00000000003805801801801801801801801801807e000000000000",
    0x0032: "0000000000780cc08600600400c0180300600c00fe000000000000",
    0x0033: "0000000000780cc00600600c03800c00600608e07c000000000000",
    0x0034: "00000000000c01c03c02c06c0cc08c0fe00c00c00c000000000000",
    0x0035: "0000000000fc0c00c00c00f808c00600600608c078000000000000",
    0x0036: "00000000003c0640c00c00fc0e60c60c60c606603c000000000000",
    0x0037: "0000000000fe00600400c00c018018010030030020000000000000",
    0x0038: "00000000007c0c60c60c604407c0c60c60c60c607c000000000000",
    0x0039: "0000000000780cc0c60c60c60ce07e00600604c078000000000000",
    0x003A: "000000000000000000038038000000000000038038000000000000",
    0x003B: "000000000000000000038038000000000000018038030020000000",
    0x003C: "00000000000000000000201e0f00c00f001e002000000000000000",
    0x003D: "0000000000000000000000ff0000000ff000000000000000000000",
    0x003E: "0000000000000000000800f001e00701e0f0080000000000000000",
    0x003F: "00000000007c04400600400c018010030000030030000000000000",
    0x0040: "00000000000003c06608319f1b31231231b309f0c006003e000000",
    0x0041: "00000000003803802806c06c0440460fe0c6082183000000000000",
    0x0042: "0000000000fc0c60c60c60c60fc0c60c20c20c60fc000000000000",
    0x0043: "00000000003c0660c00c00c00c00c00c00c006603c000000000000",
    0x0044: "0000000000f80cc0c60c60c60c60c60c60c60cc0f8000000000000",
    0x0045: "0000000000fe0c00c00c00c00fe0c00c00c00c00fe000000000000",
    0x0046: "00000000007e04004004004007e040040040040040000000000000",
    0x0047: "00000000003c0660c00c008008e0820c20c206603e000000000000",
    0x0048: "0000000000c60c60c60c60c60fe0c60c60c60c60c6000000000000",
    0x0049: "0000000000fe0100100100100100100100100100fe000000000000",
    0x004A: "00000000003c00c00c00c00c00c00c00c00c08c0f8000000000000",
    0x004B: "0000000000c30c60cc0d80f00f00d80cc0cc0c60c3000000000000",
    0x004C: "0000000000c00c00c00c00c00c00c00c00c00c00fe000000000000",
    0x004D: "0000000001c71c71ef1ab1ab1bb193183183183183000000000000",
    0x004E: "0000000000c60e60e60e60f60d60de0ce0ce0ce0c6000000000000",
    0x004F: "00000000003c0440c60c60c60c60c60c60c604407c000000000000",
    0x0050: "0000000000fc0c60c20c20c20c60fc0c00c00c00c0000000000000",
    0x0051: "00000000003c0440c60c60c60c60c60c60c604403c00c004000000",
    0x0052: "0000000000fc0cc0c60c60cc0f80cc0c60c60c20c3000000000000",
    0x0053: "00000000007c0c60c00c00e007c0060060860c607c000000000000",
    0x0054: "0000000001ff010010010010010010010010010010000000000000",
    0x0055: "0000000000c60c60c60c60c60c60c60c60c60c607c000000000000",
    0x0056: "0000000001830820c60c604406406c06c028038038000000000000",
    0x0057: "0000000001831831831bb0ba0ba0aa0ee0ee0c60c6000000000000",
    0x0058: "0000000000c20c606c02c03803803806c0460c6183000000000000",
    0x0059: "0000000001830c604406c038038010010010010010000000000000",
    0x005A: "0000000000ff00600600c0180180300600600c00ff000000000000",
    0x005B: "00000000003c03003003003003003003003003003003003c000000",
    0x005C: "0000000000c00c004006002003001001800800c004006000000000",
    0x005D: "000000000078018018018018018018018018018018018078000000",
    0x005E: "00000000003807c044082000000000000000000000000000000000",
    0x005F: "0000000000000000000000000000000000000000000000000001ff",
    0x0060: "000000060030010000000000000000000000000000000000000000",
    0x0061: "00000000000000000007c04600607e0c60c60ce07e000000000000",
    0x0062: "0000000000c00c00c00fc0e60c60c20c20c60e60fc000000000000",
    0x0063: "00000000000000000003c0620400c00c004006203c000000000000",
    0x0064: "00000000000600600607e0ce0c60c60860c60ce07e000000000000",
    0x0065: "00000000000000000003c0660c60c20fe0c004203c000000000000",
    0x0066: "00000000001e0100100fe030030030030030030030000000000000",
    0x0067: "00000000000000000007e0ce0c60c60c60c60ce07e00604c078000",
    0x0068: "0000000000c00c00c00fc0e60c60c60c60c60c60c6000000000000",
    0x0069: "0000000000100100000700100100100100100100fe000000000000",
    0x006A: "0000000000180180000780180180180180180180180180180f0000",
    0x006B: "00000000004004004004604c05807807804c046043000000000000",
    0x006C: "0000000000f003003003003003003003003003001e000000000000",
    0x006D: "0000000000000000000fe09a092092092092092092000000000000",
    0x006E: "0000000000000000000fc0e60c60c60c60c60c60c6000000000000",
    0x006F: "00000000000000000007c0460c60c60c60c604607c000000000000",
    0x0070: "0000000000000000000fc0e60c60c20c20c60e60fc0c00c00c0000",
    0x0071: "00000000000000000007e04e0c60c60c60c60ce07e006006006000",
    0x0072: "00000000000000000002e030020020020020020020000000000000",
    0x0073: "00000000000000000007c04404007001c0060c407c000000000000",
    0x0074: "0000000000000300300fe03003003003003003001e000000000000",
    0x0075: "0000000000000000000c60c60c60c60c60c604e07e000000000000",
    0x0076: "0000000000000000000820c604604406c028038038000000000000",
    0x0077: "0000000000000000001831831930ba0aa0ee0ee044000000000000",
    0x0078: "0000000000000000000c606c03803803806c0440c6000000000000",
    0x0079: "0000000000000000000c20c604606406c0380380180100300e0000",
    0x007A: "00000000000000000007e00400c0180300600400fe000000000000",
    0x007B: "00000000001e0180100100100300e003001001001001001801e000",
    0x007C: "000000000010010010010010010010010010010010010010010010",
    0x007D: "0000000000f003001001001001800e0180100100100100300e0000",
    0x007E: "0000000000000000000000000f209e000000000000000000000000",
}

CYRILLIC = {
    0x0400: "0300100000fe0c00c00c00c00fe0c00c00c00c00fe000000000000",
    0x0401: "02c02c0000fe0c00c00c00c00fe0c00c00c00c00fe000000000000",
    0x0402: "0000000001f80c00c00c00dc0fe0c20c20c20c20c200200601e008",
    0x0403: "00c0180000fe0c00c00c00c00c00c00c00c00c00c0000000000000",
    0x0404: "00000000003c0660c00c00c00fc0c00c00c006603c000000000000",
    0x0405: "00000000007c0c60c00c00e007c0060060860c607c000000000000",
    0x0406: "0000000000fe0100100100100100100100100100fe000000000000",
    0x0407: "06c06c0000fe0100100100100100100100100100fe000000000000",
    0x0408: "00000000003c00c00c00c00c00c00c00c00c08c0f8000000000000",
    0x0409: "00000000007807805805805c05e05b05b0db0db19e000000000000",
    0x040A: "0000000001981981981981fc1fe19b19b19b19b19e000000000000",
    0x040B: "0000000001f80c00c00c00dc0fe0c20c20c20c20c2000000000000",
    0x040C: "0080100000c30c60cc0d80f00f00d80cc0cc0c60c3000000000000",
    0x040D: "0300100000c60ce0ce0ce0de0d60f60e60e60e60c6000000000000",
    0x040E: "06c0380000c20c604606c06c0380380380100300e0000000000000",
    0x040F: "0000000000c60c60c60c60c60c60c60c60c60c60fe010010000000",
    0x0410: "00000000003803802806c06c0440460fe0c6082183000000000000",
    0x0411: "0000000000fe0c00c00c00c00fc0c60c20c20c60fc000000000000",
    0x0412: "0000000000fc0c60c60c60c60fc0c60c20c20c60fc000000000000",
    0x0413: "0000000000fe0c00c00c00c00c00c00c00c00c00c0000000000000",
    0x0414: "00000000007e0460460460c60c60c60c60c60c61ff183183000000",
    0x0415: "0000000000fe0c00c00c00c00fe0c00c00c00c00fe000000000000",
    0x0416: "0000000001930d60d607c07c07c07e0d60d2193193000000000000",
    0x0417: "0000000000780cc00600600c03800c00600608e07c000000000000",
    0x0418: "0000000000c60ce0ce0ce0de0d60f60e60e60e60c6000000000000",
    0x0419: "06c0380000c60ce0ce0ce0de0d60f60e60e60e60c6000000000000",
    0x041A: "0000000000c30c60cc0d80f00f00d80cc0cc0c60c3000000000000",
    0x041B: "00000000007e0660660660660660660660460c6186000000000000",
    0x041C: "0000000001c71c71ef1ab1ab1bb193183183183183000000000000",
    0x041D: "0000000000c60c60c60c60c60fe0c60c60c60c60c6000000000000",
    0x041E: "00000000003c0440c60c60c60c60c60c60c604407c000000000000",
    0x041F: "0000000000fe0c60c60c60c60c60c60c60c60c60c6000000000000",
    0x0420: "0000000000fc0c60c20c20c20c60fc0c00c00c00c0000000000000",
    0x0421: "00000000003c0660c00c00c00c00c00c00c006603c000000000000",
    0x0422: "0000000001ff010010010010010010010010010010000000000000",
    0x0423: "0000000000c20c604606c06c0380380380100300e0000000000000",
    0x0424: "00000000001007c0d60921931931930920d607c010000000000000",
    0x0425: "0000000000c20c606c02c03803803806c0460c6183000000000000",
    0x0426: "0000000001861861861861861861861861861861ff003003000000",
    0x0427: "0000000000c60c60c60c60c607e006006006006006000000000000",
    0x0428: "0000000000920920920920920920920920920920fe000000000000",
    0x0429: "0000000001b61b61b61b61b61b61b61b61b61b61ff003003000000",
    0x042A: "0000000001e006006006006007c06606206206607c000000000000",
    0x042B: "0000000001821821821821821f219a19a19a19a1f2000000000000",
    0x042C: "0000000000c00c00c00c00fc0c60c20c20c20c60fc000000000000",
    0x042D: "00000000007808c00400600607e00600600408c078000000000000",
    0x042E: "00000000019c1b61b21a31a31e31a31a31b21b619c000000000000",
    0x042F: "00000000007e0e20c20c20c207e0320620620c20c2000000000000",
    0x0430: "00000000000000000007c04600607e0c60c60ce07e000000000000",
    0x0431: "00000001c0700400c00fc0c60c60c60c60c604607c000000000000",
    0x0432: "0000000000000000000f80cc0cc0fc0c40c60cc0fc000000000000",
    0x0433: "00000000000000000007e040040040040040040040000000000000",
    0x0434: "00000000000000000007e0460460460460460c60fe082082000000",
    0x0435: "00000000000000000003c0660c60c20fe0c004203c000000000000",
    0x0436: "0000000000000000000920d607c07c07c0d6092193000000000000",
    0x0437: "00000000000000000007c0c600403c00600608607c000000000000",
    0x0438: "0000000000000000000c60ce0ce0de0f60e60e60c6000000000000",
    0x0439: "00000006c0380000000c60ce0ce0de0f60e60e60c6000000000000",
    0x043A: "00000000000000000004604c05807807804c046043000000000000",
    0x043B: "00000000000000000007e0460460460460460c6186000000000000",
    0x043C: "0000000000000000001831c71c71ef1bb1bb183183000000000000",
    0x043D: "0000000000000000000c60c60c60fe0c60c60c60c6000000000000",
    0x043E: "00000000000000000007c0460c60c60c60c604607c000000000000",
    0x043F: "0000000000000000000fe0c60c60c60c60c60c60c6000000000000",
    0x0440: "0000000000000000000fc0e60c60c20c20c60e60fc0c00c00c0000",
    0x0441: "00000000000000000003c0620400c00c004006203c000000000000",
    0x0442: "00000000000000000007e010010010010010010010000000000000",
    0x0443: "0000000000000000000c20c604606406c0380380180100300e0000",
    0x0444: "00000000001001001007c0d60920920920920d607c010010010000",
    0x0445: "0000000000000000000c606c03803803806c0440c6000000000000",
    0x0446: "0000000000000000000840840840840840840840fe002002000000",
    0x0447: "0000000000000000000c60c60c60c607e006006006000000000000",
    0x0448: "0000000000000000000920920920920920920920fe000000000000",
    0x0449: "0000000000000000001b61b61b61b61b61b61b61ff001001000000",
    0x044A: "0000000000000000001e006006007e06606306607e000000000000",
    0x044B: "0000000000000000000820820820f209a09a09a0f2000000000000",
    0x044C: "0000000000000000000c00c00c00fc0c60c60c60fc000000000000",
    0x044D: "00000000000000000007808c00607e00600608c078000000000000",
    0x044E: "00000000000000000019c1b61b31f31b31b31b619c000000000000",
    0x044F: "00000000000000000007c04404404407c0240640c4000000000000",
    0x0450: "00000006002001000003c0660c60c20fe0c004203c000000000000",
    0x0451: "00000000000006c06c03c0660c60c20fe0c004203c000000000000",
    0x0452: "0000000400400400c01f804005c07e04604204604600600c018000",
    0x0453: "00000000400c01800007e040040040040040040040000000000000",
    0x0454: "00000000000000000003c0620400fc0c004006203c000000000000",
    0x0455: "00000000000000000007c04404007001c0060c407c000000000000",
    0x0456: "0000000000100100000700100100100100100100fe000000000000",
    0x0457: "00000000006c06c0000700100100100100100100fe000000000000",
    0x0458: "0000000000180180000780180180180180180180180180180f0000",
    0x0459: "00000000000000000007804804804e04b04b0cb18e000000000000",
    0x045A: "0000000000000000001981981981fe19e19b19b19e000000000000",
    0x045B: "0000000400400400c01f804005c07e046046046046000000000000",
    0x045C: "00000000c00801000004604c05807807804c046043000000000000",
    0x045D: "0000000200100180000c60ce0ce0de0f60e60e60c6000000000000",
    0x045E: "00000006c0380000000c20c604606406c0380380180100300e0000",
    0x045F: "0000000000000000000c60c60c60c60c60c60c60fe010010000000",
}
