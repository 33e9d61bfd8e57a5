#ifndef AZTEC2P_H
#define AZTEC2P_H
#ifdef __cplusplus
extern "C" {
#endif
int az_placeholder(void);
#ifdef __cplusplus
}
#endif
#endif
