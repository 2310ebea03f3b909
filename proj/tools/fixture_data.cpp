// SPDX-License-Identifier: Apache-2.0
#include "fixture_data.hpp"

namespace fixture_data {

std::string msg_decode_len_body() {
    // A wide opcode table makes this body long enough to overflow the
    // observation budget in the bundled configs.
    std::string body = "static size_t\nmsg_decode_len(const uint8_t *p, size_t avail)\n{\n";
    body += "\tsize_t len = 0;\n\n";
    body += "\tif (avail < 1)\n\t\treturn 0;\n";
    body += "\tswitch (p[0]) {\n";
    for (int opcode = 0; opcode < 24; ++opcode) {
        body += "\tcase MSG_OP_" + std::to_string(opcode) + ":\n";
        body += "\t\tif (avail < " + std::to_string(2 + opcode % 4) + ")\n\t\t\treturn 0;\n";
        body += "\t\tlen = (size_t)p[1] << " + std::to_string((opcode % 4) * 8) + ";\n";
        body += "\t\tbreak;\n";
    }
    body += "\tdefault:\n\t\treturn 0;\n";
    body += "\t}\n\treturn len;\n}\n";
    return body;
}

std::vector<PairSpec> corpus_pairs() {
    std::vector<PairSpec> pairs;

    pairs.push_back(PairSpec{
        "cdfio-0001", "cdfio", "cdf_read_short_sector", kCdfReadShortSectorPre,
        kCdfReadShortSectorPost,
        {"CWE-119"},
        "An out-of-bounds access in the compound-document short-sector reader: the copy "
        "length is only compared against the sector size with an assertion and the copy "
        "window is not validated against the allocated table, so a crafted document can "
        "trigger reads and writes past the allocated buffer.",
        "--- a/cdfio/cdf.c\n"
        "+++ b/cdfio/cdf.c\n"
        "@@ -5,9 +5,13 @@\n"
        " \tsize_t ss = CDF_SHORT_SEC_SIZE(h);\n"
        " \tsize_t pos = CDF_SHORT_SEC_POS(h, id);\n"
        "-\tassert(ss == len);\n"
        "-\tif (pos > CDF_SEC_SIZE(h) * sst->sst_len) {\n"
        "+\tif (pos + len > CDF_SEC_SIZE(h) * sst->sst_len) {\n"
        " \t\tDPRINTF((\"Out of bounds read %\" SIZE_T_FORMAT \"u\\n\",\n"
        " \t\t    pos, CDF_SEC_SIZE(h) * sst->sst_len));\n"
        " \t\treturn -1;\n"
        " \t}\n"
        "+\tif (ss != len) {\n"
        "+\t\tDPRINTF((\"short sector size mismatch %\" SIZE_T_FORMAT \"u\\n\", ss));\n"
        "+\t\treturn -1;\n"
        "+\t}\n",
        "cdfio: bound short-sector reads by the allocated table size"});

    pairs.push_back(PairSpec{
        "cdfio-0002", "cdfio", "cdf_read_property_info", kCdfReadPropertyInfoPre,
        kCdfReadPropertyInfoPost,
        {"CWE-125"},
        "The property-info parser trusts the section-declared size and per-property offsets "
        "from the file, dereferencing each computed property pointer without checking it "
        "against the end of the stream, which allows out-of-bounds reads.",
        "--- a/cdfio/cdf.c\n"
        "+++ b/cdfio/cdf.c\n"
        "@@ -10,6 +10,10 @@\n"
        " \te = p + CDF_SECTION_DECLARED_SIZE(shp);\n"
        "+\tif (e > CAST(const uint8_t *, sst->sst_tab) + CDF_STREAM_SIZE(sst))\n"
        "+\t\treturn -1;\n"
        " \tfor (i = 0; i < *count; i++) {\n"
        " \t\tq = p + CDF_PROP_OFFSET(p, i);\n"
        "+\t\tif (q + 2 * sizeof(uint32_t) > e)\n"
        "+\t\t\treturn -1;\n",
        "cdfio: validate property offsets against the stream end"});

    pairs.push_back(PairSpec{
        "imgdec-0003", "imgdec", "img_palette_load", kImgPaletteLoadPre, kImgPaletteLoadPost,
        {"CWE-120"},
        "The palette loader multiplies an attacker-controlled color count by the wrong "
        "per-entry size and copies into a fixed 768-byte stack buffer without any bound "
        "check, so a palette header advertising enough colors overflows the stack buffer.",
        "--- a/imgdec/palette.c\n"
        "+++ b/imgdec/palette.c\n"
        "@@ -1,9 +1,14 @@\n"
        "-\tuint8_t ncolors = data[0];\n"
        "+\tif (len < 1)\n"
        "+\t\treturn -1;\n"
        "+\tncolors = data[0];\n"
        "+\tif ((size_t)ncolors * 3 + 1 > len)\n"
        "+\t\treturn -1;\n"
        "-\tmemcpy(palette, data + 1, ncolors * 4);\n"
        "+\tmemcpy(palette, data + 1, (size_t)ncolors * 3);\n",
        "imgdec: size palette copies from the validated color count"});

    pairs.push_back(PairSpec{
        "imgdec-0004", "imgdec", "img_row_copy", kImgRowCopyPre, kImgRowCopyPost,
        {"CWE-125"},
        "Row indices are taken from the render request without being compared against the "
        "image height, so negative or oversized rows make the copy read outside the decoded "
        "pixel buffer.",
        "--- a/imgdec/render.c\n"
        "+++ b/imgdec/render.c\n"
        "@@ -1,5 +1,8 @@\n"
        "+\tif (row < 0 || row >= ctx->height)\n"
        "+\t\treturn;\n"
        " \tsrc = ctx->data + (size_t)row * ctx->stride;\n",
        "imgdec: reject out-of-range rows before copying"});

    pairs.push_back(PairSpec{
        "imgdec-0005", "imgdec", "img_free_ctx", kImgFreeCtxPre, kImgFreeCtxPost,
        {"CWE-416"},
        "The context teardown frees the pixel buffer and then invokes the completion "
        "callback with that freed pointer, handing user code a dangling allocation.",
        "--- a/imgdec/ctx.c\n"
        "+++ b/imgdec/ctx.c\n"
        "@@ -1,7 +1,7 @@\n"
        "-\tfree(ctx->data);\n"
        " \tif (ctx->done_cb != NULL)\n"
        " \t\tctx->done_cb(ctx->data, ctx->cb_arg);\n"
        "+\tfree(ctx->data);\n",
        "imgdec: run the completion callback before releasing pixel data"});

    pairs.push_back(PairSpec{
        "netmsg-0006", "netmsg", "msg_parse_header", kMsgParseHeaderPre, kMsgParseHeaderPost,
        {"CWE-476"},
        "The header parser uses the allocation returned by msg_alloc_hdr without a NULL "
        "check; under allocation failure the first field store dereferences a NULL pointer "
        "and remote peers can trigger it by exhausting the header pool.",
        "--- a/netmsg/parse.c\n"
        "+++ b/netmsg/parse.c\n"
        "@@ -6,6 +6,8 @@\n"
        " \thdr = msg_alloc_hdr(c);\n"
        "+\tif (hdr == NULL)\n"
        "+\t\treturn -1;\n",
        "netmsg: handle header-pool exhaustion in msg_parse_header"});

    pairs.push_back(PairSpec{
        "netmsg-0007", "netmsg", "msg_queue_pop", kMsgQueuePopPre, kMsgQueuePopPost,
        {"CWE-416"},
        "The queue pop releases the message before returning it, so every caller receives "
        "a pointer to freed memory and the subsequent handling is a use after free.",
        "--- a/netmsg/queue.c\n"
        "+++ b/netmsg/queue.c\n"
        "@@ -7,6 +7,6 @@\n"
        " \tif (q->head == NULL)\n"
        " \t\tq->tail = NULL;\n"
        "-\tmsg_release(m);\n"
        "+\tm->next = NULL;\n"
        " \treturn m;\n",
        "netmsg: let callers own messages returned from the queue"});

    pairs.push_back(PairSpec{
        "netmsg-0008", "netmsg", "msg_checksum", kMsgChecksumPre, kMsgChecksumPost,
        {"CWE-125"},
        "The checksum loop iterates one byte past the payload because the loop bound uses "
        "<= instead of <, reading one byte beyond the buffer on every verification.",
        "--- a/netmsg/csum.c\n"
        "+++ b/netmsg/csum.c\n"
        "@@ -4,6 +4,6 @@\n"
        "-\tfor (i = 0; i <= len; i++)\n"
        "+\tfor (i = 0; i < len; i++)\n",
        "netmsg: fix off-by-one bound in msg_checksum"});

    pairs.push_back(PairSpec{
        "strfmt-0009", "strfmt", "str_expand", kStrExpandPre, kStrExpandPost,
        {"CWE-120"},
        "Percent expansion writes into a fixed 64-byte stack buffer with no bound on the "
        "output index, so inputs longer than the buffer, or with enough percent signs, "
        "overflow the stack frame.",
        "--- a/strfmt/expand.c\n"
        "+++ b/strfmt/expand.c\n"
        "@@ -5,6 +5,8 @@\n"
        " \tfor (i = 0; i < n; i++) {\n"
        "+\t\tif (j + 3 >= sizeof(buf))\n"
        "+\t\t\tbreak;\n",
        "strfmt: bound expansion output to the stack buffer"});

    pairs.push_back(PairSpec{
        "strfmt-0010", "strfmt", "str_tok_next", kStrTokNextPre, kStrTokNextPost,
        {"CWE-476"},
        "The tokenizer writes through the strchr result without checking for NULL, so an "
        "input with no remaining separator dereferences NULL and crashes the caller.",
        "--- a/strfmt/tok.c\n"
        "+++ b/strfmt/tok.c\n"
        "@@ -3,6 +3,8 @@\n"
        " \tchar *p = strchr(st->cur, st->sep);\n"
        "+\tif (p == NULL)\n"
        "+\t\treturn NULL;\n"
        " \t*p = '\\0';\n",
        "strfmt: stop tokenizing when no separator remains"});

    return pairs;
}

std::vector<ProjectContext> project_contexts() {
    std::vector<ProjectContext> projects;

    projects.push_back(ProjectContext{
        "cdfio",
        {
            {"cdf_read_short_sector", kCdfReadShortSectorPre,
             {"cdf_read_short_sector_chain"},
             {"DPRINTF", "memcpy"}},
            {"cdf_read_short_sector_chain", kCdfReadShortSectorChain,
             {"cdf_read_user_stream"},
             {"calloc", "cdf_read_short_sector", "free"}},
            {"cdf_read_user_stream", kCdfReadUserStream,
             {},
             {"cdf_find_stream", "cdf_read_short_sector_chain"}},
            {"cdf_read_property_info", kCdfReadPropertyInfoPre,
             {"cdf_unpack_summary_info"},
             {}},
            {"cdf_unpack_summary_info", kCdfUnpackSummaryInfo,
             {},
             {"cdf_read_property_info"}},
        }});

    projects.push_back(ProjectContext{
        "imgdec",
        {
            {"img_palette_load", kImgPaletteLoadPre, {"img_decode_header"}, {"memcpy"}},
            {"img_decode_header", kImgDecodeHeader, {}, {"img_get_u16", "img_palette_load"}},
            {"img_row_copy", kImgRowCopyPre, {"img_render"}, {"memcpy"}},
            {"img_render", kImgRender, {}, {"img_row_copy"}},
            {"img_free_ctx", kImgFreeCtxPre, {"img_close"}, {"free"}},
            {"img_close", kImgClose, {}, {"img_free_ctx"}},
        }});

    projects.push_back(ProjectContext{
        "netmsg",
        {
            {"msg_parse_header", kMsgParseHeaderPre,
             {"msg_on_read"},
             {"msg_alloc_hdr", "msg_decode_len", "msg_dispatch"}},
            {"msg_on_read", kMsgOnRead, {}, {"conn_abort", "conn_consume", "msg_parse_header"}},
            {"msg_decode_len", msg_decode_len_body(), {"msg_parse_header"}, {}},
            {"msg_queue_pop", kMsgQueuePopPre, {"msg_loop"}, {"msg_release"}},
            {"msg_loop", kMsgLoop, {}, {"msg_handle", "msg_queue_pop", "msg_release"}},
            {"msg_checksum", kMsgChecksumPre, {"msg_verify"}, {}},
            {"msg_verify", kMsgVerify, {}, {"msg_checksum"}},
        }});

    projects.push_back(ProjectContext{
        "strfmt",
        {
            {"str_expand", kStrExpandPre, {"str_render"}, {"strcpy", "strdup"}},
            {"str_render", kStrRender, {}, {"str_expand"}},
            {"str_tok_next", kStrTokNextPre, {"str_split"}, {"strchr"}},
            {"str_split", kStrSplit, {}, {"str_tok_next"}},
        }});

    return projects;
}

} // namespace fixture_data
